#include "potts/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

namespace potts::poly {

namespace {

void check_same(const Poly& a, const Poly& b) {
    if (a.field() != b.field()) fail(ErrorCode::MixedFields, "polynomials over different fields");
}

}  // namespace

Poly::Poly(Field f, std::vector<Elem> coeffs) : f_(f), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (c.field() != f_) fail(ErrorCode::MixedFields, "coefficient outside the polynomial's field");
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Elem& c) { return Poly(c.field(), {c}); }

Poly Poly::x(Field f) { return Poly(f, {f.zero(), f.one()}); }

Poly Poly::monomial(const Elem& c, std::size_t deg) {
    std::vector<Elem> v(deg + 1, c.field().zero());
    v[deg] = c;
    return Poly(c.field(), std::move(v));
}

Poly Poly::from_ints(Field f, const std::vector<std::int64_t>& coeffs) {
    std::vector<Elem> v;
    v.reserve(coeffs.size());
    for (auto c : coeffs) v.push_back(f.from_int(c));
    return Poly(f, std::move(v));
}

Elem Poly::operator()(const Elem& x) const {
    if (x.field() != f_) fail(ErrorCode::MixedFields, "evaluation point outside the polynomial's field");
    Elem r = f_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    check_same(*this, o);
    std::vector<Elem> v(std::max(c_.size(), o.c_.size()), f_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return Poly(f_, std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Elem> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(-c);
    return Poly(f_, std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
    check_same(*this, o);
    if (c_.empty() || o.c_.empty()) return Poly(f_);
    std::vector<Elem> v(c_.size() + o.c_.size() - 1, f_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    return Poly(f_, std::move(v));
}

Poly Poly::operator*(const Elem& k) const {
    std::vector<Elem> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(c * k);
    return Poly(f_, std::move(v));
}

DivMod divmod(const Poly& a, const Poly& b) {
    check_same(a, b);
    if (b.is_zero()) fail(ErrorCode::ZeroElement, "polynomial division by zero");
    const Field f = a.field();
    std::vector<Elem> r = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {Poly(f), a};
    std::vector<Elem> q(a.degree() - db + 1, f.zero());
    const Elem inv_lead = b.lead().inv();
    for (int k = a.degree() - db; k >= 0; --k) {
        Elem c = r[k + db] * inv_lead;
        q[k] = c;
        if (c.is_zero()) continue;
        for (int i = 0; i <= db; ++i) r[k + i] -= c * b.coeffs()[i];
    }
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly monic(const Poly& a) {
    if (a.is_zero()) return a;
    return a * a.lead().inv();
}

Poly gcd(const Poly& a, const Poly& b) {
    check_same(a, b);
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).remainder;
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

Poly derivative(const Poly& a) {
    const Field f = a.field();
    if (a.degree() < 1) return Poly(f);
    std::vector<Elem> v;
    for (int i = 1; i <= a.degree(); ++i) v.push_back(f.from_int(i) * a.coeffs()[i]);
    return Poly(f, std::move(v));
}

Poly pow(const Poly& a, unsigned e) {
    Poly r = Poly::constant(a.field().one());
    Poly b = a;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
    Poly r = divmod(Poly::constant(base.field().one()), mod).remainder;
    Poly b = divmod(base, mod).remainder;
    while (e) {
        if (e & 1) r = divmod(r * b, mod).remainder;
        b = divmod(b * b, mod).remainder;
        e >>= 1;
    }
    return r;
}

Poly compose(const Poly& f, const Poly& g) {
    check_same(f, g);
    Poly r(f.field());
    for (std::size_t i = f.coeffs().size(); i-- > 0;) r = r * g + Poly::constant(f.coeffs()[i]);
    return r;
}

Elem resultant(const Poly& f, const Poly& g) {
    check_same(f, g);
    const Field F = f.field();
    if (f.is_zero() && g.is_zero()) fail(ErrorCode::InvalidArgument, "resultant of two zero polynomials");
    if (f.is_zero() || g.is_zero()) {
        const Poly& other = f.is_zero() ? g : f;
        return other.degree() == 0 ? F.one() : F.zero();
    }
    const int m = f.degree();
    const int n = g.degree();
    const int size = m + n;
    if (size == 0) return F.one();
    std::vector<std::vector<Elem>> s(size, std::vector<Elem>(size, F.zero()));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s[r][r + i] = f.coeffs()[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s[n + r][r + i] = g.coeffs()[n - i];
    Elem det = F.one();
    for (int col = 0; col < size; ++col) {
        int pivot = -1;
        for (int r = col; r < size; ++r) {
            if (!s[r][col].is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return F.zero();
        if (pivot != col) {
            std::swap(s[pivot], s[col]);
            det = -det;
        }
        det *= s[col][col];
        const Elem inv = s[col][col].inv();
        for (int r = col + 1; r < size; ++r) {
            if (s[r][col].is_zero()) continue;
            Elem factor = s[r][col] * inv;
            for (int c = col; c < size; ++c) s[r][c] -= factor * s[col][c];
        }
    }
    return det;
}

namespace {

// Splits a monic squarefree polynomial known to be a product of distinct linear factors.
void split_linear(const Poly& g, std::mt19937_64& rng, std::vector<Elem>& out) {
    const Field f = g.field();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(-g.coeffs()[0] / g.coeffs()[1]);
        return;
    }
    const std::uint64_t q = f.order();
    std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
    for (;;) {
        Poly shift = Poly(f, {f.from_code(dist(rng)), f.one()});
        Poly h = powmod(shift, (q - 1) / 2, g) - Poly::constant(f.one());
        Poly d = gcd(g, h);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear(d, rng, out);
            split_linear(divmod(g, d).quotient, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Elem> roots(const Poly& f) {
    if (f.is_zero()) fail(ErrorCode::InvalidArgument, "roots of the zero polynomial");
    const Field F = f.field();
    std::vector<Elem> distinct;
    if (f.degree() >= 1) {
        Poly m = monic(f);
        Poly xq = powmod(Poly::x(F), F.order(), m);
        Poly g = gcd(m, xq - Poly::x(F));
        std::mt19937_64 rng(0x5eed5eedULL);
        split_linear(g, rng, distinct);
    }
    std::vector<Elem> out;
    for (const auto& r : distinct) {
        Poly rest = f;
        Poly lin(F, {-r, F.one()});
        for (;;) {
            auto dm = divmod(rest, lin);
            if (!dm.remainder.is_zero()) break;
            out.push_back(r);
            rest = std::move(dm.quotient);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

unsigned splitting_degree(const Poly& f) {
    if (f.is_zero()) fail(ErrorCode::InvalidArgument, "splitting degree of the zero polynomial");
    if (f.degree() <= 1) return 1;
    const Field F = f.field();
    Poly m = monic(f);
    Poly rest = m;
    Poly x = Poly::x(F);
    Poly h = divmod(x, m).remainder;
    unsigned lcm = 1;
    for (unsigned d = 1; rest.degree() > 0; ++d) {
        if (d > 64) fail(ErrorCode::SplittingCapExceeded, "distinct-degree factorization did not terminate");
        h = powmod(h, F.order(), m);
        bool found = false;
        for (;;) {
            Poly g = gcd(rest, divmod(h - x, rest).remainder);
            if (g.degree() <= 0) break;
            found = true;
            rest = divmod(rest, g).quotient;
        }
        if (found) lcm = std::lcm(lcm, d);
    }
    return lcm;
}

Field extension_field(const Field& base, unsigned m, std::uint64_t cap) {
    return ff::make_field(base.characteristic(), base.degree() * m, cap);
}

namespace {

struct EmbeddingCache {
    std::mutex mu;
    std::map<std::pair<const void*, const void*>, Elem> image_of_generator;
};

EmbeddingCache& embedding_cache() {
    static EmbeddingCache c;
    return c;
}

Elem generator_image(const Field& from, const Field& to) {
    auto key = std::make_pair(static_cast<const void*>(from.data()), static_cast<const void*>(to.data()));
    {
        auto& c = embedding_cache();
        std::lock_guard lock(c.mu);
        auto it = c.image_of_generator.find(key);
        if (it != c.image_of_generator.end()) return it->second;
    }
    std::vector<Elem> coeffs;
    for (auto c : from.modulus()) coeffs.push_back(to.from_int(static_cast<std::int64_t>(c)));
    auto rs = roots(Poly(to, std::move(coeffs)));
    ensure(!rs.empty(), "defining polynomial has no root in the target field");
    Elem img = rs.front();
    auto& c = embedding_cache();
    std::lock_guard lock(c.mu);
    c.image_of_generator.emplace(key, img);
    return img;
}

}  // namespace

Elem embed(const Elem& x, const Field& target) {
    const Field from = x.field();
    if (from == target) return x;
    if (from.characteristic() != target.characteristic() || target.degree() % from.degree() != 0)
        fail(ErrorCode::MixedFields, "F_" + from.spec() + " does not embed in F_" + target.spec());
    auto cs = x.coeffs();
    if (from.degree() == 1) return target.from_int(static_cast<std::int64_t>(cs[0]));
    const Elem g = generator_image(from, target);
    Elem r = target.zero();
    for (std::size_t i = cs.size(); i-- > 0;) r = r * g + target.from_int(static_cast<std::int64_t>(cs[i]));
    return r;
}

Poly embed(const Poly& f, const Field& target) {
    std::vector<Elem> v;
    v.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) v.push_back(embed(c, target));
    return Poly(target, std::move(v));
}

SplitRoots roots_over_splitting_field(const Poly& f, unsigned cap) {
    if (f.is_zero()) fail(ErrorCode::InvalidArgument, "roots of the zero polynomial");
    const unsigned m = splitting_degree(f);
    if (m > cap)
        fail(ErrorCode::SplittingCapExceeded,
             "splitting field has degree " + std::to_string(m) + " over F_" + f.field().spec() + ", cap is " +
                 std::to_string(cap));
    Field K = extension_field(f.field(), m);
    auto rs = roots(embed(f, K));
    ensure(static_cast<int>(rs.size()) == f.degree(), "polynomial does not split over its splitting field");
    return {K, std::move(rs)};
}

// ------------------------------------------------------------------ Dyadic

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer overflow");
    return r;
}

std::int64_t shl(std::int64_t a, unsigned k) {
    for (unsigned i = 0; i < k; ++i) a = checked_mul(a, 2);
    return a;
}

}  // namespace

Dyadic::Dyadic(std::int64_t numerator, unsigned exponent) : num_(numerator), exp_(exponent) {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    while (exp_ > 0 && num_ % 2 == 0) {
        num_ /= 2;
        --exp_;
    }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    unsigned e = std::max(exp_, o.exp_);
    return Dyadic(checked_add(shl(num_, e - exp_), shl(o.num_, e - o.exp_)), e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator*(const Dyadic& o) const { return Dyadic(checked_mul(num_, o.num_), exp_ + o.exp_); }

std::string Dyadic::to_string() const {
    if (exp_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/2^" + std::to_string(exp_);
}

Elem Dyadic::reduce(const Field& f) const {
    if (f.characteristic() == 2) fail(ErrorCode::EvenPrime, "2 is not invertible in characteristic 2");
    Elem half = f.from_int(2).inv();
    return f.from_int(num_) * half.pow(static_cast<std::uint64_t>(exp_));
}

Dyadic parse_dyadic(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Dyadic(std::stoll(text));
        auto rest = text.substr(slash + 1);
        if (rest.rfind("2^", 0) != 0) fail(ErrorCode::InvalidArgument, "dyadic denominator must be 2^e");
        return Dyadic(std::stoll(text.substr(0, slash)), static_cast<unsigned>(std::stoul(rest.substr(2))));
    } catch (const std::logic_error&) {
        fail(ErrorCode::InvalidArgument, "malformed dyadic rational '" + text + "'");
    }
}

// ------------------------------------------------------------------ integer polynomials

namespace {

void int_trim(IntPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

IntPoly int_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
    int_trim(r);
    return r;
}

IntPoly int_exact_div(const IntPoly& a, const IntPoly& d) {
    if (d.empty() || d.back() != 1) fail(ErrorCode::InvalidArgument, "divisor must be monic");
    IntPoly r = a;
    int_trim(r);
    if (r.size() < d.size()) {
        ensure(r.empty(), "inexact integer polynomial division");
        return {};
    }
    IntPoly q(r.size() - d.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        std::int64_t c = r[k + d.size() - 1];
        q[k] = c;
        for (std::size_t i = 0; i < d.size(); ++i) r[k + i] = checked_add(r[k + i], -checked_mul(c, d[i]));
    }
    int_trim(r);
    ensure(r.empty(), "inexact integer polynomial division");
    return q;
}

DyadicPoly to_dyadic(const IntPoly& a) {
    DyadicPoly out;
    out.reserve(a.size());
    for (auto c : a) out.emplace_back(c);
    return out;
}

unsigned euler_phi(unsigned n) {
    unsigned r = n;
    for (auto [pr, e] : ff::factorize(n)) r = r / static_cast<unsigned>(pr) * static_cast<unsigned>(pr - 1);
    return r;
}

IntPoly cyclotomic_phi(unsigned n) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "cyclotomic index must be positive");
    IntPoly num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d == 0) num = int_exact_div(num, cyclotomic_phi(d));
    }
    return num;
}

IntPoly half_trace_psi(unsigned n) {
    if (n % 2 == 0) fail(ErrorCode::EvenN, "half-trace polynomials are defined for odd n");
    if (n < 3) fail(ErrorCode::InvalidArgument, "half-trace polynomials need n >= 3");
    const IntPoly phi = cyclotomic_phi(n);
    const std::size_t h = (phi.size() - 1) / 2;
    for (std::size_t i = 0; i < phi.size(); ++i)
        ensure(phi[i] == phi[phi.size() - 1 - i], "cyclotomic polynomial is not palindromic");
    // T_k(u) = t^k + t^-k: T_0 = 2, T_1 = u, T_{k+1} = u T_k - T_{k-1}
    std::vector<IntPoly> T{{2}, {0, 1}};
    for (std::size_t k = 1; k < h; ++k) {
        IntPoly next(k + 2, 0);
        for (std::size_t i = 0; i < T[k].size(); ++i) next[i + 1] = T[k][i];
        for (std::size_t i = 0; i < T[k - 1].size(); ++i) next[i] = checked_add(next[i], -T[k - 1][i]);
        int_trim(next);
        T.push_back(std::move(next));
    }
    IntPoly psi(h + 1, 0);
    psi[0] = phi[h];
    for (std::size_t k = 1; k <= h; ++k) {
        for (std::size_t i = 0; i < T[k].size(); ++i) psi[i] = checked_add(psi[i], checked_mul(phi[h + k], T[k][i]));
    }
    int_trim(psi);
    return psi;
}

DyadicPoly half_trace_chi(unsigned n) {
    const IntPoly psi = half_trace_psi(n);
    const unsigned h = static_cast<unsigned>(psi.size() - 1);
    DyadicPoly chi;
    chi.reserve(psi.size());
    for (unsigned j = 0; j <= h; ++j) chi.emplace_back(psi[j], h - j);
    return chi;
}

Poly reduce_into(const DyadicPoly& f, const Field& target) {
    std::vector<Elem> v;
    v.reserve(f.size());
    for (const auto& c : f) v.push_back(c.reduce(target));
    return Poly(target, std::move(v));
}

Poly reduce_mod_p(const DyadicPoly& f, std::uint64_t p) {
    if (p == 2) fail(ErrorCode::EvenPrime, "reduction mod 2 is undefined over Z[1/2]");
    return reduce_into(f, ff::make_field(p, 1));
}

}  // namespace potts::poly
