#include "potts/wild_norm.hpp"

#include <algorithm>

#include "potts/error.hpp"

namespace potts::wild {

namespace {

Elem prime_image(const Field& F, unsigned p) { return F.from_int(static_cast<std::int64_t>(p)); }

// sum_i h_i (aX + b)^i (cX + d)^{deg - i}: the binary form of h, of formal degree deg, pulled back and set at Z' = 1.
Poly pull_back(const Poly& h, unsigned deg, const Elem& a, const Elem& b, const Elem& c, const Elem& d) {
    const Field F = h.field();
    const Poly num(F, {b, a}), den(F, {d, c});
    std::vector<Poly> num_pow{Poly::constant(F.one())}, den_pow{Poly::constant(F.one())};
    for (unsigned i = 0; i < deg; ++i) {
        num_pow.push_back(num_pow.back() * num);
        den_pow.push_back(den_pow.back() * den);
    }
    Poly out(F);
    for (unsigned i = 0; i <= deg; ++i) {
        const Elem hi = h.coeff(i);
        if (hi.is_zero()) continue;
        out = out + num_pow[i] * den_pow[deg - i] * hi;
    }
    return out;
}

struct Decomposition {
    Elem c2, c1, c0;
};

// h = c2 N^2 + c1 N + c0 with constants c_i.
Decomposition decompose(const Poly& h, const Poly& N) {
    auto [q, r] = poly::divmod(h, N);
    auto [q2, r2] = poly::divmod(q, N);
    ensure(r.degree() <= 0 && r2.degree() <= 0 && q2.degree() <= 0, "pulled-back H is a quadratic in the norm");
    return {q2.coeff(0), r2.coeff(0), r.coeff(0)};
}

NormContext with_unit_U(const NormContext& ctx) {
    const Elem Ui = ctx.U().inv();
    return NormContext(ctx.p(), ctx.t(), ctx.psi(), ctx.field().one(), ctx.A() * Ui, ctx.B() * Ui);
}

NormContext from_decomposition(unsigned p, const Elem& t, const Elem& psi, const Decomposition& d) {
    if (d.c2.is_zero()) fail(ErrorCode::SingularConfiguration, "pulled-back H lost its leading coefficient");
    const Elem k = d.c2.inv();
    return NormContext(p, t, psi, t.field().one(), d.c1 * k, d.c0 * k);
}

}  // namespace

NormContext::NormContext(unsigned p, const Elem& t, const Elem& psi, const Elem& U, const Elem& A, const Elem& B)
    : p_(p), t_(t), psi_(psi), U_(U), A_(A), B_(B) {
    if (!ff::is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (p == 2) fail(ErrorCode::EvenPrime, "p must be odd");
    const Field F = t.field();
    for (const Elem* e : {&psi, &U, &A, &B})
        if (!(e->field() == F)) fail(ErrorCode::MixedFields, "context elements lie in different fields");
    Elem sum = F.zero(), pw = F.one();
    for (unsigned i = 0; i < p; ++i) {
        sum = sum + pw;
        pw = pw * t;
    }
    if (!sum.is_zero()) fail(ErrorCode::InvalidArgument, "1 + t + ... + t^(p-1) must vanish");
    if (t.is_one() && psi.is_zero()) fail(ErrorCode::InvalidArgument, "t - 1 and psi must not both vanish");
    if (U.is_zero()) fail(ErrorCode::InvalidArgument, "U must be a unit");
}

Elem partial_sum(const NormContext& ctx, unsigned i) {
    if (i > ctx.p()) fail(ErrorCode::IndexOutOfRange, "partial sum index must lie in [0, p]");
    const Field F = ctx.field();
    Elem sum = F.zero(), pw = F.one();
    for (unsigned k = 0; k < i; ++k) {
        sum = sum + pw;
        pw = pw * ctx.t();
    }
    return sum;
}

Poly norm_poly(const NormContext& ctx) {
    const Field F = ctx.field();
    Poly N = Poly::constant(F.one());
    for (unsigned i = 0; i < ctx.p(); ++i) N = N * Poly(F, {-(partial_sum(ctx, i) * ctx.psi()), F.one()});
    ensure(poly::compose(N, Poly(F, {ctx.psi(), ctx.t()})) == N, "norm is invariant under X -> tX + psi");
    return N;
}

Elem omega(const NormContext& ctx) {
    Elem w = ctx.field().one();
    for (unsigned i = 1; i < ctx.p(); ++i) w = w * partial_sum(ctx, i);
    if (!ctx.t().is_one())
        ensure(w * (ctx.t() - ctx.field().one()).pow(static_cast<std::uint64_t>(ctx.p() - 1)) ==
                   prime_image(ctx.field(), ctx.p()),
               "p = omega (t - 1)^(p-1)");
    return w;
}

Elem omega_checked(const NormContext& ctx) {
    if (ctx.t().is_one()) fail(ErrorCode::TEqualsOne, "the omega identity degenerates at t = 1");
    return omega(ctx);
}

HDelta build_H_delta(const NormContext& ctx) {
    const Poly N = norm_poly(ctx);
    const Field F = ctx.field();
    const Poly H = N * N * ctx.U() + N * ctx.A() + Poly::constant(ctx.B());
    const std::uint64_t p = ctx.p();
    const Elem tm1 = ctx.t() - F.one();
    const Elem delta = ctx.U() * ctx.psi().pow(2 * p) - ctx.A() * ctx.psi().pow(p) * tm1.pow(p) +
                       ctx.B() * tm1.pow(2 * p);
    return {H, delta};
}

ResultantCheck resultant_identity(const NormContext& ctx) {
    const Elem w = omega_checked(ctx);
    auto [H, delta] = build_H_delta(ctx);
    const std::uint64_t p = ctx.p();
    ResultantCheck out;
    out.lhs = poly::resultant(H, poly::derivative(H));
    out.rhs = -(ctx.U().pow(p) * w.pow(2 * p) * delta.pow(p - 1) *
                (ctx.A() * ctx.A() - 4 * (ctx.B() * ctx.U())).pow(p));
    out.holds = out.lhs == out.rhs;
    return out;
}

bool verify_resultant_identity(const NormContext& ctx) { return resultant_identity(ctx).holds; }

Elem wild_j(const NormContext& ctx) {
    const Elem delta = build_H_delta(ctx).delta;
    const Elem disc = ctx.A() * ctx.A() - 4 * (ctx.U() * ctx.B());
    if (delta.is_zero() || disc.is_zero())
        fail(ErrorCode::SingularConfiguration, "delta (A^2 - 4UB) vanishes");
    return ctx.U() * delta / disc;
}

ChangeReport change_coordinates(const NormContext& ctx0, const Affine& mode) {
    if (mode.alpha.is_zero()) fail(ErrorCode::DegenerateChange, "alpha must be nonzero");
    const NormContext ctx = with_unit_U(ctx0);
    const Field F = ctx.field();
    const unsigned p = ctx.p();
    const Elem& al = mode.alpha;
    const Elem& be = mode.beta;
    const Elem t = ctx.t();
    const Elem psi2 = al * ctx.psi() - (t - F.one()) * be;
    const NormContext probe(p, t, psi2, F.one(), F.zero(), F.zero());
    const Poly N = norm_poly(ctx), N2 = norm_poly(probe);

    // N'(alpha X + beta) = alpha^p N(X) + xi
    const Poly diff = poly::compose(N2, Poly(F, {be, al})) - N * al.pow(static_cast<std::uint64_t>(p));
    ensure(diff.degree() <= 0, "transported norm differs by a constant");
    const Elem xi = diff.coeff(0);

    const Poly H = build_H_delta(ctx).H;
    const Decomposition d = decompose(pull_back(H, 2 * p, al.inv(), -(be / al), F.zero(), F.one()), N2);
    NormContext next = from_decomposition(p, t, psi2, d);

    const Elem ap = al.pow(static_cast<std::uint64_t>(p));
    const Elem A2 = ap * ctx.A() - 2 * xi;
    const Elem B2 = ap * ap * ctx.B() - xi * xi - A2 * xi;
    ensure(next.A() == A2 && next.B() == B2, "transported coefficients match the closed form");

    ChangeReport rep{next, d.c2.inv(), xi, true, false};
    ensure(rep.scale == ap * ap, "H' = alpha^(2p) H");
    rep.j_invariant = wild_j(next) == wild_j(ctx);
    return rep;
}

ChangeReport change_coordinates(const NormContext& ctx0, const DeltaSwap& mode) {
    const NormContext ctx = with_unit_U(ctx0);
    const Field F = ctx.field();
    const unsigned p = ctx.p();
    const Elem t = ctx.t();
    const Elem tm1 = t - F.one();
    Elem u = F.zero(), v = F.zero();
    if (mode.u || mode.v) {
        u = mode.u.value_or(F.zero());
        v = mode.v.value_or(F.zero());
    } else if (!t.is_one()) {
        u = tm1.inv();
    } else {
        v = ctx.psi().inv();
    }
    if (!(u * tm1 + v * ctx.psi()).is_one()) fail(ErrorCode::InvalidArgument, "Bezout data must satisfy u(t-1) + v psi = 1");

    const Elem ti = t.inv();
    const Elem psi2 = ti * v;
    const NormContext probe(p, ti, psi2, F.one(), F.zero(), F.zero());
    const Poly N2 = norm_poly(probe);

    // X = psi X' + u Z', Z = -(t-1) X' + v Z'
    const Poly H = build_H_delta(ctx).H;
    const Decomposition d = decompose(pull_back(H, 2 * p, ctx.psi(), u, -tm1, v), N2);
    NormContext next = from_decomposition(p, ti, psi2, d);

    ChangeReport rep{next, d.c2.inv(), std::nullopt, false, false};
    const Elem delta = build_H_delta(ctx).delta, delta2 = build_H_delta(next).delta;
    rep.delta_product_one = (delta * delta2).is_one();
    ensure(rep.scale == delta2, "H' = delta' H");
    rep.j_invariant = wild_j(next) == wild_j(ctx);
    return rep;
}

InvariantSubspace invariant_subspace(const NormContext& ctx) {
    const Field F = ctx.field();
    const std::size_t n = ctx.p() + 1;
    // column k of T - I holds the coefficients of (tX + psi)^k - X^k
    std::vector<std::vector<Elem>> M(n, std::vector<Elem>(n, F.zero()));
    const Poly lin(F, {ctx.psi(), ctx.t()});
    Poly pw = Poly::constant(F.one());
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t r = 0; r < n; ++r) M[r][k] = pw.coeff(r);
        M[k][k] = M[k][k] - F.one();
        pw = pw * lin;
    }
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && M[piv][col].is_zero()) ++piv;
        if (piv == n) continue;
        std::swap(M[piv], M[row]);
        const Elem inv = M[row][col].inv();
        for (auto& e : M[row]) e = e * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || M[r][col].is_zero()) continue;
            const Elem f = M[r][col];
            for (std::size_t c = 0; c < n; ++c) M[r][c] = M[r][c] - f * M[row][c];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++row;
    }
    std::vector<std::vector<Elem>> kernel;
    for (std::size_t free = 0; free < n; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
        std::vector<Elem> vec(n, F.zero());
        vec[free] = F.one();
        for (std::size_t r = 0; r < pivot_col.size(); ++r) vec[pivot_col[r]] = -M[r][free];
        kernel.push_back(vec);
    }
    InvariantSubspace out;
    for (auto& vec : kernel) out.basis.emplace_back(F, vec);

    const Poly N = norm_poly(ctx);
    auto fixed = [&](const Poly& f) { return poly::compose(f, lin) == f; };
    out.matches_norm = out.basis.size() == 2 && fixed(Poly::constant(F.one())) && fixed(N);
    return out;
}

bool invariant_subspace_check(const NormContext& ctx) { return invariant_subspace(ctx).matches_norm; }

std::vector<Elem> roots_of_order_p(unsigned p, const Field& F) {
    if ((F.order() - 1) % p != 0) fail(ErrorCode::NoSuchRoot, "p does not divide q - 1");
    const Elem z = ff::primitive_root_of_unity(F, p);
    std::vector<Elem> out;
    Elem pw = z;
    for (unsigned k = 1; k < p; ++k, pw = pw * z) out.push_back(pw);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace potts::wild
