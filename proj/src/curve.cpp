#include "potts/curve.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

namespace potts::curve {

std::string to_string(Variant v) { return v == Variant::Tame ? "tame" : "wild"; }

std::string to_string(AutTag t) {
    switch (t) {
        case AutTag::TwoTimesDihedralN: return "TwoTimesDihedralN";
        case AutTag::TwoTimesDihedral2N: return "TwoTimesDihedral2N";
        case AutTag::RepGroupSym4: return "RepGroupSym4";
        case AutTag::PGL2FiberProduct: return "PGL2FiberProduct";
        case AutTag::WildTwoTimesDihedralP: return "WildTwoTimesDihedralP";
    }
    return "?";
}

PottsModel PottsModel::tame(unsigned N, const Elem& A, const Elem& B, unsigned sigma_exponent) {
    if (A.field() != B.field()) fail(ErrorCode::MixedFields, "A and B over different fields");
    PottsModel m;
    m.variant = Variant::Tame;
    m.N = N;
    m.field = A.field();
    m.A = A;
    m.B = B;
    m.sigma_exponent = sigma_exponent;
    return m;
}

PottsModel PottsModel::wild(const Elem& A, const Elem& B) {
    if (A.field() != B.field()) fail(ErrorCode::MixedFields, "A and B over different fields");
    PottsModel m;
    m.variant = Variant::Wild;
    m.N = static_cast<unsigned>(A.field().characteristic());
    m.field = A.field();
    m.A = A;
    m.B = B;
    return m;
}

Poly PottsModel::rhs(const Field& target) const {
    const Elem a = poly::embed(A, target), b = poly::embed(B, target);
    if (variant == Variant::Tame) {
        std::vector<Elem> c(2 * N + 1, target.zero());
        c[0] = b;
        c[N] = a;
        c[2 * N] = target.one();
        return Poly(target, std::move(c));
    }
    std::vector<Elem> u(N + 1, target.zero());
    u[1] = -target.one();
    u[N] = target.one();
    Poly U(target, std::move(u));
    return U * U + U * a + Poly::constant(b);
}

namespace {

void check_model(const PottsModel& m) {
    const std::uint64_t p = m.field.characteristic();
    if (m.A.field() != m.field || m.B.field() != m.field) fail(ErrorCode::MixedFields, "coefficients outside the model field");
    if (m.variant == Variant::Tame) {
        if (m.N % 2 == 0) fail(ErrorCode::EvenN, "N must be odd");
        if (m.N < 3) fail(ErrorCode::InvalidArgument, "N must be at least 3");
        if ((2 * static_cast<std::uint64_t>(m.N)) % p == 0)
            fail(ErrorCode::WrongCharacteristic, "tame models need p not dividing 2N");
        if (std::gcd(m.sigma_exponent, m.N) != 1)
            fail(ErrorCode::InvalidArgument, "sigma exponent must be prime to N");
        if (m.B.is_zero()) fail(ErrorCode::SingularModel, "B = 0");
    } else if (m.N != p) {
        fail(ErrorCode::WrongCharacteristic, "wild models need N = p");
    }
    if ((m.A * m.A - 4 * m.B).is_zero()) fail(ErrorCode::SingularModel, "A^2 - 4B = 0");
}

std::uint64_t multiplicative_order_mod(std::uint64_t q, std::uint64_t n) {
    std::uint64_t m = 1, r = q % n;
    while (r != 1 % n) {
        r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * q % n);
        ++m;
    }
    return m;
}

// Orbit of P under g.
std::vector<ProjPoint> orbit(const ProjMap& g, const ProjPoint& P) {
    std::vector<ProjPoint> out{P};
    for (ProjPoint Q = pgl2::apply(g, P); !(Q == P); Q = pgl2::apply(g, Q)) out.push_back(Q);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Field cyclotomic_extension(const Field& F, std::uint64_t n) {
    if (n % F.characteristic() == 0)
        fail(ErrorCode::NoSuchRoot, "no primitive " + std::to_string(n) + "-th roots of unity in characteristic " +
                                        std::to_string(F.characteristic()));
    const auto m = multiplicative_order_mod(F.order(), n);
    return poly::extension_field(F, static_cast<unsigned>(m));
}

Elem standard_root_of_unity(const Field& F, std::uint64_t n, const Field& target) {
    const Field C = cyclotomic_extension(F, n);
    return poly::embed(ff::primitive_root_of_unity(C, n), target);
}

BranchData validate(const PottsModel& m, unsigned splitting_cap) {
    check_model(m);
    const Poly f = m.rhs(m.field);
    auto split = poly::roots_over_splitting_field(f, splitting_cap);
    BranchData bd;
    bd.field = split.field;
    const Field K = bd.field;
    auto rs = split.roots;
    ensure(std::adjacent_find(rs.begin(), rs.end()) == rs.end(), "branch points are not distinct");
    for (const auto& r : rs) bd.sigma.push_back(ProjPoint::finite(r));
    if (m.variant == Variant::Tame) {
        bd.sigma_scalar = standard_root_of_unity(m.field, m.N, K).pow(static_cast<std::uint64_t>(m.sigma_exponent));
        bd.sigma0 = ProjMap(bd.sigma_scalar, K.zero(), K.zero(), K.one());
    } else {
        bd.sigma_scalar = K.one();
        bd.sigma0 = ProjMap::from_ints(K, 1, 1, 0, 1);
        auto ts = poly::roots(Poly(K, {poly::embed(m.B, K), poly::embed(m.A, K), K.one()}));
        ensure(ts.size() == 2 && !(ts[0] == ts[1]), "T^2 + AT + B must have two distinct roots");
        bd.r = ts[0];
        bd.s = ts[1];
        std::vector<Elem> as(m.N + 1, K.zero());
        as[1] = -K.one();
        as[m.N] = K.one();
        const Poly AS(K, as);
        bd.alpha = poly::roots(AS - Poly::constant(*bd.r)).front();
        bd.beta = poly::roots(AS - Poly::constant(*bd.s)).front();
    }
    bd.orbit1 = orbit(bd.sigma0, bd.sigma.front());
    std::set<ProjPoint> rest(bd.sigma.begin(), bd.sigma.end());
    for (const auto& P : bd.orbit1) rest.erase(P);
    ensure(!rest.empty(), "branch set is a single orbit");
    bd.orbit2 = orbit(bd.sigma0, *rest.begin());
    ensure(bd.orbit1.size() == m.N && bd.orbit2.size() == m.N, "branch orbits must have size N");
    for (const auto& P : bd.orbit2) rest.erase(P);
    ensure(rest.empty(), "branch set is not the union of two orbits");
    ensure(bd.sigma.size() == 2 * m.N, "expected 2N branch points");
    // Riemann-Hurwitz for the double cover of P^1: 2g - 2 = 2(-2) + |Sigma|
    const int two_g_minus_2 = -4 + static_cast<int>(bd.sigma.size());
    bd.genus = static_cast<unsigned>((two_g_minus_2 + 2) / 2);
    ensure(bd.genus == m.N - 1, "genus is not N - 1");
    return bd;
}

Elem j_invariant(const PottsModel& m) {
    check_model(m);
    const Elem disc = m.A * m.A - 4 * m.B;
    return m.variant == Variant::Tame ? m.B / disc : disc.inv();
}

PottsModel canonical_model_from_j(unsigned N, const Field& F, const Elem& j, Variant variant) {
    if (j.field() != F) fail(ErrorCode::MixedFields, "j outside the given field");
    if (j.is_zero()) fail(ErrorCode::ZeroElement, "j must be nonzero");
    PottsModel m;
    if (variant == Variant::Wild) {
        m = PottsModel::wild(F.zero(), -(4 * j).inv());
    } else {
        const Elem quarter = -F.from_int(4).inv();
        if (j == quarter)
            m = PottsModel::tame(N, F.zero(), -F.one());
        else
            m = PottsModel::tame(N, F.one() + 4 * j, j * (F.one() + 4 * j));
    }
    check_model(m);
    ensure(j_invariant(m) == j, "canonical model does not realize j");
    return m;
}

// ------------------------------------------------------------------ automorphism maps

namespace {

AutomorphismMap make_map(std::string name, Elem a, Elem b, Elem c, Elem d, Elem kappa) {
    return AutomorphismMap{std::move(name), a, b, c, d, kappa};
}

std::optional<CurvePoint> apply_map(const AutomorphismMap& f, const CurvePoint& P, unsigned N) {
    const Elem den = f.c * P.x + f.d;
    if (den.is_zero()) return std::nullopt;
    return CurvePoint{(f.a * P.x + f.b) / den, f.kappa * P.y / den.pow(static_cast<std::uint64_t>(N))};
}

bool same_point(const std::optional<CurvePoint>& P, const CurvePoint& Q) {
    return P && P->x == Q.x && P->y == Q.y;
}

}  // namespace

AutomorphismMap compose(const AutomorphismMap& f, const AutomorphismMap& g, unsigned) {
    return make_map(f.name + "*" + g.name, f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c,
                    f.c * g.b + f.d * g.d, f.kappa * g.kappa);
}

AutomorphismMap inverse(const AutomorphismMap& f, unsigned N) {
    // adj(M) = det(M) M^-1, so (M, kappa)^-1 ~ (adj M, det^N / kappa)
    const Elem det = f.a * f.d - f.b * f.c;
    return make_map(f.name + "^-1", f.d, -f.b, -f.c, f.a, det.pow(static_cast<std::uint64_t>(N)) / f.kappa);
}

bool is_identity(const AutomorphismMap& f, unsigned N) {
    return f.b.is_zero() && f.c.is_zero() && f.a == f.d && f.kappa == f.a.pow(static_cast<std::uint64_t>(N));
}

bool equivalent(const AutomorphismMap& f, const AutomorphismMap& g, unsigned N) {
    return is_identity(compose(f, inverse(g, N), N), N);
}

namespace {

// (cX + d)^{2N} F((aX + b)/(cX + d))
Poly transform(const Poly& F, const Elem& a, const Elem& b, const Elem& c, const Elem& d, unsigned deg) {
    const Field K = F.field();
    const Poly num(K, {b, a}), den(K, {d, c});
    std::vector<Poly> num_pow{Poly::constant(K.one())}, den_pow{Poly::constant(K.one())};
    for (unsigned i = 1; i <= deg; ++i) {
        num_pow.push_back(num_pow.back() * num);
        den_pow.push_back(den_pow.back() * den);
    }
    Poly out(K);
    for (unsigned i = 0; i <= deg; ++i) {
        const Elem fi = F.coeff(i);
        if (fi.is_zero()) continue;
        out = out + num_pow[i] * den_pow[deg - i] * fi;
    }
    return out;
}

}  // namespace

bool preserves_curve(const AutomorphismMap& f, const Poly& rhs, unsigned N) {
    return transform(rhs, f.a, f.b, f.c, f.d, 2 * N) == rhs * (f.kappa * f.kappa);
}

bool RelationReport::all_pass() const {
    return sigma_order && tau_involution && tau_central && mu_involution && mu_conjugation && maps_preserve_curve &&
           sampled_points >= 20 && sampled_relations && tau_fixed_points;
}

Automorphisms automorphisms(const PottsModel& m, unsigned splitting_cap) {
    const BranchData bd = validate(m, splitting_cap);
    const Field F = m.field;
    const unsigned N = m.N;
    // a field where the branch points, B^{1/N} and sqrt(B) all live, large enough to sample 20 points
    unsigned deg = bd.field.degree() / F.degree();
    if (m.variant == Variant::Tame) {
        std::vector<Elem> xn(N + 1, F.zero());
        xn[0] = -m.B;
        xn[N] = F.one();
        deg = std::lcm(deg, poly::splitting_degree(Poly(F, xn)));
        deg = std::lcm(deg, poly::splitting_degree(Poly(F, {-m.B, F.zero(), F.one()})));
    }
    if (deg > splitting_cap) fail(ErrorCode::RootExtractionFailed, "roots of B need an extension beyond the cap");
    unsigned k = 1;
    while (ff::ipow(F.order(), deg * k) < 128) ++k;
    const Field K = poly::extension_field(F, deg * k);
    const Poly rhs = m.rhs(K);

    Automorphisms out;
    out.field = K;
    const Elem zero = K.zero(), one = K.one();
    out.tau = make_map("tau", one, zero, zero, one, -one);
    if (m.variant == Variant::Tame) {
        const Elem zeta = poly::embed(bd.sigma_scalar, K);
        out.sigma = make_map("sigma", zeta, zero, zero, one, one);
        const Elem B = poly::embed(m.B, K);
        std::vector<Elem> xn(N + 1, zero);
        xn[0] = -B;
        xn[N] = one;
        auto nth = poly::roots(Poly(K, xn));
        auto sq = ff::square_root(B);
        if (nth.empty() || !sq) fail(ErrorCode::RootExtractionFailed, "B has no N-th or square root");
        out.mu = make_map("mu", zero, nth.front(), one, zero, *sq);
    } else {
        out.sigma = make_map("sigma", one, one, zero, one, one);
        const Elem ab = poly::embed(*bd.alpha, K) + poly::embed(*bd.beta, K);
        out.mu = make_map("mu", -one, ab, zero, one, one);
    }

    RelationReport& r = out.report;
    AutomorphismMap sN = out.sigma;
    for (unsigned i = 1; i < N; ++i) sN = compose(sN, out.sigma, N);
    r.sigma_order = is_identity(sN, N);
    r.tau_involution = is_identity(compose(out.tau, out.tau, N), N);
    r.tau_central = equivalent(compose(out.tau, out.sigma, N), compose(out.sigma, out.tau, N), N) &&
                    equivalent(compose(out.tau, out.mu, N), compose(out.mu, out.tau, N), N);
    r.mu_involution = is_identity(compose(out.mu, out.mu, N), N);
    const AutomorphismMap conj = compose(compose(out.mu, out.sigma, N), inverse(out.mu, N), N);
    r.mu_conjugation = equivalent(conj, inverse(out.sigma, N), N);
    r.maps_preserve_curve =
        preserves_curve(out.sigma, rhs, N) && preserves_curve(out.tau, rhs, N) && preserves_curve(out.mu, rhs, N);

    // sampled points: apply the maps one after another and compare
    bool ok = true;
    const AutomorphismMap mu_inv = inverse(out.mu, N), sigma_inv = inverse(out.sigma, N);
    for (std::uint64_t code = 0; code < K.order() && r.sampled_points < 20; ++code) {
        const Elem x = K.from_code(code);
        auto y = ff::square_root(rhs(x));
        if (!y) continue;
        const CurvePoint P{x, *y};
        auto on_curve = [&](const std::optional<CurvePoint>& Q) { return Q && Q->y * Q->y == rhs(Q->x); };
        auto s = apply_map(out.sigma, P, N), t = apply_map(out.tau, P, N), u = apply_map(out.mu, P, N);
        if (!u) continue;
        ++r.sampled_points;
        ok = ok && on_curve(s) && on_curve(t) && on_curve(u);
        std::optional<CurvePoint> Q = P;
        for (unsigned i = 0; i < N && Q; ++i) Q = apply_map(out.sigma, *Q, N);
        ok = ok && same_point(Q, P);
        ok = ok && same_point(apply_map(out.tau, *t, N), P);
        auto uu = apply_map(out.mu, *u, N);
        ok = ok && same_point(uu, P);
        auto ts = apply_map(out.tau, *s, N), st = apply_map(out.sigma, *t, N);
        ok = ok && ts && same_point(ts, *st);
        auto tu = apply_map(out.tau, *u, N), ut = apply_map(out.mu, *t, N);
        ok = ok && tu && same_point(tu, *ut);
        auto mi = apply_map(mu_inv, P, N);
        std::optional<CurvePoint> lhs;
        if (mi) {
            auto smi = apply_map(out.sigma, *mi, N);
            if (smi) lhs = apply_map(out.mu, *smi, N);
        }
        auto rhs_pt = apply_map(sigma_inv, P, N);
        ok = ok && lhs && rhs_pt && same_point(lhs, *rhs_pt);
    }
    r.sampled_relations = ok;

    // tau fixes exactly the points (x, 0) over the branch set: two sigma-orbits of size N
    const Poly rb = m.rhs(bd.field);
    bool fixed = bd.sigma.size() == 2 * N && bd.orbit1.size() == N && bd.orbit2.size() == N;
    for (const auto& P : bd.sigma) fixed = fixed && rb(P.x()).is_zero();
    r.tau_fixed_points = fixed;
    return out;
}

// ------------------------------------------------------------------ isomorphisms

namespace {

// Least m <= cap with c an e-th power in F_{q^m}; c lies in F_q.
std::optional<unsigned> power_degree(const Elem& c, std::uint64_t e, unsigned cap) {
    const std::uint64_t q = c.field().order();
    unsigned __int128 Q = 1;
    for (unsigned m = 1; m <= cap; ++m) {
        Q *= q;
        const unsigned __int128 Qm1 = Q - 1;
        const std::uint64_t g = std::gcd(e, static_cast<std::uint64_t>(Qm1 % e));
        const std::uint64_t exp = static_cast<std::uint64_t>((Qm1 / g) % (q - 1));
        if (c.pow(exp).is_one()) return m;
    }
    return std::nullopt;
}

struct WitnessCache {
    std::mutex mu;
    std::map<std::tuple<const void*, std::uint64_t, std::uint64_t, unsigned>, Elem> roots;
};

WitnessCache& witness_cache() {
    static WitnessCache c;
    return c;
}

// Least root of X^e - c over the degree-m extension of c's field.
Elem extension_root(const Elem& c, std::uint64_t e, unsigned m) {
    auto key = std::make_tuple(static_cast<const void*>(c.field().data()), e, c.code(), m);
    {
        auto& cache = witness_cache();
        std::lock_guard lock(cache.mu);
        auto it = cache.roots.find(key);
        if (it != cache.roots.end()) return it->second;
    }
    const Field K = poly::extension_field(c.field(), m);
    std::vector<Elem> xe(e + 1, K.zero());
    xe[0] = -poly::embed(c, K);
    xe[e] = K.one();
    auto rs = poly::roots(Poly(K, xe));
    ensure(!rs.empty(), "solvability test promised a root");
    auto& cache = witness_cache();
    std::lock_guard lock(cache.mu);
    cache.roots.emplace(key, rs.front());
    return rs.front();
}

}  // namespace

std::optional<Witness> find_witness(const PottsModel& m1, const PottsModel& m2, unsigned search_cap) {
    const Field F = m1.field;
    if (m1.variant == Variant::Wild) {
        const Elem w = (m2.A - m1.A) / F.from_int(2);
        if (!(m2.B == m1.B + w * m1.A + w * w)) return std::nullopt;
        std::vector<Elem> as(m1.N + 1, F.zero());
        as[0] = -w;
        as[1] = -F.one();
        as[m1.N] = F.one();
        unsigned m = poly::roots(Poly(F, as)).empty() ? m1.N : 1;
        if (m > search_cap) return std::nullopt;
        const Field K = poly::extension_field(F, m);
        auto ts = poly::roots(poly::embed(Poly(F, as), K));
        ensure(!ts.empty(), "Artin-Schreier equation has no root in degree p");
        const Elem t = ts.front();
        const Elem tw = t.pow(static_cast<std::uint64_t>(m1.N)) - t;
        ensure(tw == poly::embed(w, K), "Artin-Schreier witness check");
        return Witness{K, m, t, 0};
    }
    const std::uint64_t N = m1.N;
    struct Candidate {
        int kind;
        std::uint64_t e;
        Elem c;
    };
    std::vector<Candidate> cands;
    const bool a1 = !m1.A.is_zero(), a2 = !m2.A.is_zero();
    if (a1 && a2) {
        const Elem c1 = m2.A / m1.A;
        if (m2.B == c1 * c1 * m1.B) cands.push_back({1, N, c1});
        const Elem c2 = m2.A * m1.B / m1.A;
        if (m2.B == c2 * c2 / m1.B) cands.push_back({2, N, c2});
    } else if (!a1 && !a2) {
        cands.push_back({1, 2 * N, m2.B / m1.B});
        cands.push_back({2, 2 * N, m2.B * m1.B});
    }
    std::optional<Witness> best;
    for (const auto& cand : cands) {
        auto m = power_degree(cand.c, cand.e, search_cap);
        if (!m || (best && best->degree <= *m)) continue;
        const Elem lambda = extension_root(cand.c, cand.e, *m);
        best = Witness{lambda.field(), *m, lambda, cand.kind};
    }
    if (best) {
        // explicit check of the twisted coefficients
        const Field K = best->field;
        const Elem l = best->value, A1 = poly::embed(m1.A, K), B1 = poly::embed(m1.B, K);
        const Elem lN = l.pow(N);
        const Elem A2 = best->kind == 1 ? lN * A1 : lN * A1 / B1;
        const Elem B2 = best->kind == 1 ? lN * lN * B1 : lN * lN / B1;
        ensure(A2 == poly::embed(m2.A, K) && B2 == poly::embed(m2.B, K), "isomorphism witness check");
    }
    return best;
}

IsoResult is_isomorphic(const PottsModel& m1, const PottsModel& m2, unsigned search_cap) {
    if (m1.variant != m2.variant || m1.N != m2.N) fail(ErrorCode::VariantMismatch, "models of different type");
    if (m1.field != m2.field) fail(ErrorCode::MixedFields, "models over different fields");
    IsoResult r;
    r.j_match = j_invariant(m1) == j_invariant(m2);
    r.geometric = r.j_match;
    if (m1.variant == Variant::Tame) {
        const unsigned k1 = m1.sigma_exponent % m1.N, k2 = m2.sigma_exponent % m1.N;
        r.chi_class_match = k1 == k2 || (k1 + k2) % m1.N == 0;
        r.geometric = r.geometric && *r.chi_class_match;
    }
    if (r.geometric) {
        r.witness = find_witness(m1, m2, search_cap);
        r.searched_up_to = r.witness ? r.witness->degree : search_cap;
    }
    return r;
}

// ------------------------------------------------------------------ automorphism groups

AutClassification classify_aut(const PottsModel& m) {
    check_model(m);
    AutClassification c;
    const std::uint64_t N = m.N;
    if (m.variant == Variant::Wild) {
        c.tag = AutTag::WildTwoTimesDihedralP;
        c.order = 4 * N;
        c.equivariant_order = 2 * N;
        return c;
    }
    const Field F = m.field;
    const std::uint64_t p = F.characteristic();
    const Elem j = j_invariant(m);
    const Elem quarter = -F.from_int(4).inv();
    std::uint64_t q = 2 * N - 1;
    unsigned s = 0;
    while (q % p == 0) {
        q /= p;
        ++s;
    }
    const bool prime_power = q == 1 && s >= 1;
    if (j == quarter && prime_power) {
        c.tag = AutTag::PGL2FiberProduct;
        c.q = 2 * N - 1;
        c.order = 2 * c.q * (c.q * c.q - 1);
        c.equivariant_order = 4 * N;
    } else if (N == 3 && p != 5 && j == -F.from_int(54).inv()) {
        c.tag = AutTag::RepGroupSym4;
        c.order = 48;
        c.equivariant_order = 2 * N;
    } else if (j == quarter) {
        c.tag = AutTag::TwoTimesDihedral2N;
        c.order = 8 * N;
        c.equivariant_order = 4 * N;
    } else {
        c.tag = AutTag::TwoTimesDihedralN;
        c.order = 4 * N;
        c.equivariant_order = 2 * N;
    }
    return c;
}

namespace {

struct Lift {
    Elem a, b, c, d, kappa;
};

Lift lift_mul(const Lift& f, const Lift& g) {
    return {f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d,
            f.kappa * g.kappa};
}

bool lift_identity(const Lift& f, std::uint64_t N) {
    return f.b.is_zero() && f.c.is_zero() && f.a == f.d && f.kappa == f.a.pow(N);
}

std::uint64_t lift_order(const Lift& f, std::uint64_t N, std::uint64_t bound) {
    Lift r = f;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        if (lift_identity(r, N)) return n;
        r = lift_mul(r, f);
    }
    fail(ErrorCode::InvariantViolation, "lifted automorphism has unbounded order");
}

}  // namespace

OracleResult aut_order_oracle(const PottsModel& m, unsigned splitting_cap) {
    const BranchData bd = validate(m, splitting_cap);
    const Field K = bd.field;
    OracleResult out;
    const auto G = pgl2::stabilizer_of_set(bd.sigma, K);
    out.G_order = G.size();
    out.aut_order = 2 * G.size();
    out.G_class = pgl2::classify_subgroup(G);
    std::uint64_t centralizer = 0;
    for (const auto& g : G)
        if (pgl2::compose(g, bd.sigma0) == pgl2::compose(bd.sigma0, g)) ++centralizer;
    out.equivariant_order = 2 * centralizer;

    // lift each gamma to (M, kappa) with kappa^2 F = F^gamma
    const std::uint64_t N = m.N;
    auto try_lift = [&](const Field& L, std::vector<Lift>& lifts) {
        const Poly F = m.rhs(L);
        for (const auto& g : G) {
            const Elem a = poly::embed(g.a(), L), b = poly::embed(g.b(), L), c = poly::embed(g.c(), L),
                       d = poly::embed(g.d(), L);
            const Poly Fg = transform(F, a, b, c, d, static_cast<unsigned>(2 * N));
            const Elem lambda = Fg.coeff(2 * N);
            if (lambda.is_zero() || !(Fg == F * lambda)) fail(ErrorCode::InvariantViolation, "stabilizer element does not preserve F up to scalar");
            auto kappa = ff::square_root(lambda);
            if (!kappa) return false;
            lifts.push_back({a, b, c, d, *kappa});
            lifts.push_back({a, b, c, d, -*kappa});
        }
        return true;
    };
    std::vector<Lift> lifts;
    if (!try_lift(K, lifts)) {
        lifts.clear();
        const Field K2 = poly::extension_field(K, 2);
        out.lifts_ok = try_lift(K2, lifts);
    } else {
        out.lifts_ok = true;
    }
    out.lifts_ok = out.lifts_ok && lifts.size() == 2 * G.size();
    const std::uint64_t bound = 4 * (K.order() + 1) + 4 * N;
    bool central = true;
    for (const auto& f : lifts) {
        out.max_lift_order = std::max(out.max_lift_order, lift_order(f, N, bound));
        const Field L = f.a.field();
        const Lift tau{L.one(), L.zero(), L.zero(), L.one(), -L.one()};
        const Lift x = lift_mul(f, tau), y = lift_mul(tau, f);
        central = central && x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d && x.kappa == y.kappa;
    }
    out.tau_central = central;
    return out;
}

SquareRootCheck quarter_j_square_root_check(unsigned N, const Field& F) {
    SquareRootCheck r;
    r.phi = ff::primitive_root_of_unity(F, 2 * static_cast<std::uint64_t>(N));
    const Elem zeta = r.phi * r.phi;
    const Elem s = zeta + zeta.inv();
    const Elem shift = r.phi + r.phi.inv();
    r.M_zeta = pgl2::m_zeta(zeta);
    r.S = ProjMap(s + shift, s - F.from_int(2), F.one(), F.from_int(2) + shift);
    r.square_ok = pgl2::compose(r.S, r.S) == r.M_zeta;
    r.order = pgl2::order_by_powering(r.S);
    ensure(r.square_ok, "S^2 != M_zeta");
    ensure(r.order == 2 * N, "S does not have order 2N");
    return r;
}

}  // namespace potts::curve
