#include "potts/picard.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "potts/error.hpp"

namespace potts::picard {

namespace {

unsigned mod(std::int64_t a, std::int64_t n) { return static_cast<unsigned>(((a % n) + n) % n); }

// Eigenvalue of a diagonal automorphism on x^{i-1} dx / y: x -> (a/d) x, y -> kappa y / d^N.
Elem diagonal_eigenvalue(const curve::AutomorphismMap& f, unsigned i, unsigned N) {
    ensure(f.b.is_zero() && f.c.is_zero(), "diagonal automorphism");
    return (f.a / f.d).pow(static_cast<std::uint64_t>(i)) * f.d.pow(static_cast<std::uint64_t>(N)) / f.kappa;
}

unsigned discrete_log(const Elem& x, const Elem& base, unsigned order) {
    Elem pw = base.field().one();
    for (unsigned k = 0; k < order; ++k, pw = pw * base)
        if (pw == x) return k;
    fail(ErrorCode::InvariantViolation, "eigenvalue is not a power of phi");
}

}  // namespace

CharacterPair make_pair(std::int64_t eps, std::int64_t k, unsigned N) { return {mod(eps, 2), mod(k, 2 * N)}; }

CharacterPair add(const CharacterPair& a, const CharacterPair& b, unsigned N) {
    return make_pair(a.eps + b.eps, static_cast<std::int64_t>(a.k) + b.k, N);
}

HodgeCharacters hodge_characters(unsigned N, const Field& F) {
    if (N < 3) fail(ErrorCode::InvalidArgument, "N must be at least 3");
    if (N % 2 == 0) fail(ErrorCode::EvenN, "N must be odd");
    if ((F.order() - 1) % (2 * N) != 0) fail(ErrorCode::NoSuchRoot, "the field has no primitive 2N-th root of unity");

    HodgeCharacters out;
    out.N = N;
    const Elem zeta = ff::primitive_root_of_unity(F, N);
    out.phi = -zeta;
    ensure(ff::element_order(out.phi) == 2 * N, "phi has order 2N");

    // y^2 = x^{2N} - 1 with sigma_0 (x, y) = (phi x, y) and tau (x, y) = (x, -y); sigma_0^2 = sigma^2 as phi^2 = zeta^2
    const auto model = curve::PottsModel::tame(N, F.zero(), -F.one());
    const poly::Poly rhs = model.rhs(F);
    const curve::AutomorphismMap sigma0{"sigma0", out.phi, F.zero(), F.zero(), F.one(), F.one()};
    const curve::AutomorphismMap sigma_sq{"sigma^2", zeta * zeta, F.zero(), F.zero(), F.one(), F.one()};
    const curve::AutomorphismMap tau{"tau", F.one(), F.zero(), F.zero(), F.one(), -F.one()};
    ensure(curve::preserves_curve(sigma0, rhs, N) && curve::preserves_curve(tau, rhs, N), "sigma_0 and tau preserve the curve");
    ensure(curve::equivalent(curve::compose(sigma0, sigma0, N), sigma_sq, N), "sigma_0^2 = sigma^2");

    out.sigma_wedge = F.one();
    out.tau_wedge = F.one();
    for (unsigned i = 1; i < N; ++i) {
        const Elem s = diagonal_eigenvalue(sigma0, i, N), t = diagonal_eigenvalue(tau, i, N);
        out.sigma_eigen.push_back(s);
        out.tau_eigen.push_back(t);
        out.sigma_wedge = out.sigma_wedge * s;
        out.tau_wedge = out.tau_wedge * t;
        ensure(t == -F.one(), "tau acts by -1 on differentials");
        out.characters.push_back(make_pair(1, discrete_log(s, out.phi, 2 * N), N));
    }
    const Elem expected = ((N - 1) / 2) % 2 ? -F.one() : F.one();
    ensure(out.sigma_wedge == expected, "sigma_0 acts on the top wedge by (-1)^((N-1)/2)");
    return out;
}

Field default_character_field(unsigned N) {
    if (N == 0) fail(ErrorCode::InvalidArgument, "N must be positive");
    std::uint64_t l = 2ULL * N + 1;
    while (!ff::is_prime(l)) l += 2ULL * N;
    return ff::make_field(l, 1);
}

bool GeneratedSubgroup::contains(const CharacterPair& c) const {
    return std::binary_search(elements.begin(), elements.end(), c);
}

GeneratedSubgroup subgroup_generated(const std::vector<CharacterPair>& gens, unsigned N) {
    std::set<CharacterPair> seen{CharacterPair{}};
    std::vector<CharacterPair> frontier{CharacterPair{}};
    while (!frontier.empty()) {
        std::vector<CharacterPair> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                const auto y = add(x, make_pair(g.eps, g.k, N), N);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {N, std::vector<CharacterPair>(seen.begin(), seen.end())};
}

TruncLaurent::TruncLaurent(Field k, unsigned m, int lo, int hi) : k_(k), m_(m), lo_(lo), hi_(hi) {
    if (m == 0) fail(ErrorCode::InvalidArgument, "truncation order must be positive");
    if (lo > hi) fail(ErrorCode::InvalidArgument, "empty X-window");
    c_.assign(m * width(), k.zero());
}

TruncLaurent TruncLaurent::constant(Field k, unsigned m, int lo, int hi, const Elem& c) {
    return monomial(k, m, lo, hi, c, 0, 0);
}

TruncLaurent TruncLaurent::monomial(Field k, unsigned m, int lo, int hi, const Elem& c, unsigned zdeg, int xdeg) {
    TruncLaurent u(k, m, lo, hi);
    if (zdeg < m) u.set(zdeg, xdeg, c);
    return u;
}

Elem TruncLaurent::coeff(unsigned i, int e) const {
    if (i >= m_) fail(ErrorCode::IndexOutOfRange, "z-degree beyond truncation");
    if (e < lo_ || e > hi_) return k_.zero();
    return c_[idx(i, e)];
}

void TruncLaurent::set(unsigned i, int e, const Elem& c) {
    if (i >= m_) fail(ErrorCode::IndexOutOfRange, "z-degree beyond truncation");
    if (e < lo_ || e > hi_) {
        if (c.is_zero()) return;
        fail(ErrorCode::WindowOverflow, "X-exponent " + std::to_string(e) + " outside the window");
    }
    c_[idx(i, e)] = c;
}

bool TruncLaurent::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Elem& e) { return e.is_zero(); });
}

bool TruncLaurent::is_unit() const {
    int count = 0;
    for (int e = lo_; e <= hi_; ++e)
        if (!c_[idx(0, e)].is_zero()) ++count;
    return count == 1;
}

bool TruncLaurent::in_one_plus_zA() const {
    for (int e = lo_; e <= hi_; ++e)
        if (c_[idx(0, e)] != (e == 0 ? k_.one() : k_.zero())) return false;
    return lo_ <= 0 && hi_ >= 0;
}

std::pair<Elem, int> TruncLaurent::monomial_layer() const {
    if (!is_unit()) fail(ErrorCode::NotAUnit, "the z^0 layer is not a monomial");
    for (int e = lo_; e <= hi_; ++e)
        if (!c_[idx(0, e)].is_zero()) return {c_[idx(0, e)], e};
    fail(ErrorCode::NotAUnit, "zero layer");
}

void TruncLaurent::check_compatible(const TruncLaurent& o) const {
    if (!(k_ == o.k_) || m_ != o.m_ || lo_ != o.lo_ || hi_ != o.hi_)
        fail(ErrorCode::InvalidArgument, "incompatible truncated Laurent elements");
}

TruncLaurent TruncLaurent::operator+(const TruncLaurent& o) const {
    check_compatible(o);
    TruncLaurent r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

TruncLaurent TruncLaurent::operator-(const TruncLaurent& o) const {
    check_compatible(o);
    TruncLaurent r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

TruncLaurent TruncLaurent::operator*(const TruncLaurent& o) const {
    check_compatible(o);
    const std::size_t w = 2 * width() - 1;
    std::vector<Elem> acc(m_ * w, k_.zero());
    for (unsigned i = 0; i < m_; ++i)
        for (int e = lo_; e <= hi_; ++e) {
            const Elem a = c_[idx(i, e)];
            if (a.is_zero()) continue;
            for (unsigned j = 0; i + j < m_; ++j)
                for (int f = lo_; f <= hi_; ++f) {
                    const Elem b = o.c_[o.idx(j, f)];
                    if (b.is_zero()) continue;
                    Elem& slot = acc[(i + j) * w + static_cast<std::size_t>(e + f - 2 * lo_)];
                    slot = slot + a * b;
                }
        }
    TruncLaurent r(k_, m_, lo_, hi_);
    for (unsigned i = 0; i < m_; ++i)
        for (std::size_t s = 0; s < w; ++s) r.set(i, static_cast<int>(s) + 2 * lo_, acc[i * w + s]);
    return r;
}

bool operator==(const TruncLaurent& a, const TruncLaurent& b) {
    return a.k_ == b.k_ && a.m_ == b.m_ && a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.c_ == b.c_;
}

std::string TruncLaurent::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (unsigned i = 0; i < m_; ++i)
        for (int e = lo_; e <= hi_; ++e) {
            const Elem c = c_[idx(i, e)];
            if (c.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << c.code();
            if (i) os << "*z^" << i;
            if (e) os << "*X^" << e;
        }
    if (first) os << "0";
    return os.str();
}

TruncLaurent inverse(const TruncLaurent& u) {
    const auto [c, e] = u.monomial_layer();
    const Field k = u.field();
    const TruncLaurent lead_inv = TruncLaurent::monomial(k, u.m(), u.lo(), u.hi(), c.inv(), 0, -e);
    const TruncLaurent one = TruncLaurent::constant(k, u.m(), u.lo(), u.hi(), k.one());
    // u = c X^e (1 + n) with n nilpotent; (1 + n)^-1 = sum (-n)^i for i < m
    const TruncLaurent n = lead_inv * u - one;
    TruncLaurent term = one, sum = one;
    for (unsigned i = 1; i < u.m(); ++i) {
        term = term * (TruncLaurent(k, u.m(), u.lo(), u.hi()) - n);
        sum = sum + term;
    }
    return sum * lead_inv;
}

TruncLaurent power(const TruncLaurent& u, std::uint64_t e) {
    TruncLaurent result = TruncLaurent::constant(u.field(), u.m(), u.lo(), u.hi(), u.field().one());
    TruncLaurent base = u;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

MuStructure mu_n_structure(const Field& k, unsigned n, int window, std::size_t samples, std::uint64_t seed) {
    const unsigned p = static_cast<unsigned>(k.characteristic());
    if (p == 2) fail(ErrorCode::WrongCharacteristic, "characteristic 2 is excluded");
    if (n != 2 && n != p) fail(ErrorCode::InvalidArgument, "n must be 2 or the characteristic");
    if (window < 0) fail(ErrorCode::InvalidArgument, "window must be nonnegative");
    const unsigned m = std::max(1u, (p - 1) / 2);
    // powers of a sample stay within (m - 1) window plus p for a unit's monomial part
    const int W = static_cast<int>(p) + static_cast<int>(std::max(1u, m - 1)) * window;
    std::mt19937_64 rng(seed);
    auto rand_elem = [&] { return k.from_code(rng() % k.order()); };
    auto rand_nilpotent = [&] {
        TruncLaurent a(k, m, -W, W);
        for (unsigned i = 1; i < m; ++i)
            for (int e = -window; e <= window; ++e) a.set(i, e, rand_elem());
        return a;
    };
    const TruncLaurent one = TruncLaurent::constant(k, m, -W, W, k.one());

    MuStructure out;
    out.n = n;
    out.samples = samples;
    bool ok = true;
    if (n == 2) {
        out.description = "{1, -1}";
        // the monomial layer c X^e squares to 1 only for e = 0 and c^2 = 1
        for (std::uint64_t code = 1; code < k.order(); ++code) {
            const Elem c = k.from_code(code);
            if ((c * c).is_one()) out.constants.push_back(c);
        }
        ok = out.constants.size() == 2 && std::count(out.constants.begin(), out.constants.end(), -k.one()) == 1;
        // the nilpotent part is then forced to vanish: (1 + n)^2 = 1 iff n (2 + n) = 0
        for (std::size_t s = 0; s < samples; ++s) {
            const TruncLaurent nil = rand_nilpotent();
            const TruncLaurent u = one + nil;
            const bool square_one = (u * u) == one;
            if (square_one != nil.is_zero()) ok = false;
            if (square_one) ++out.torsion_hits;
        }
    } else {
        out.description = "1 + zA";
        for (std::size_t s = 0; s < samples; ++s) {
            if (!(power(one + rand_nilpotent(), p) == one)) ok = false;
            // a unit c X^e (1 + n) with small c, e
            Elem c = k.zero();
            while (c.is_zero()) c = rand_elem();
            if (s % 2 == 0) c = k.one();
            const int e = (s % 3 == 0) ? 0 : static_cast<int>(rng() % 3) - 1;
            const TruncLaurent u = TruncLaurent::monomial(k, m, -W, W, c, 0, e) * (one + rand_nilpotent());
            if (power(u, p) == one) {
                ++out.torsion_hits;
                if (!u.in_one_plus_zA()) ok = false;
            }
        }
        if (out.torsion_hits == 0) ok = false;
    }
    out.verified = ok;
    return out;
}

std::string PicardDescriptor::name() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < finite_factors.size(); ++i) os << (i ? " x " : "") << "Z/" << finite_factors[i];
    if (!infinite_part.empty()) os << " x (" << infinite_part << ")";
    return os.str();
}

PicardDescriptor picard_descriptor(curve::Variant variant, unsigned N, std::uint64_t p) {
    if (N % 2 == 0) fail(ErrorCode::EvenN, "N must be odd");
    if (p != 0 && !ff::is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (p == 2) fail(ErrorCode::WrongCharacteristic, "characteristic 2 is excluded");
    PicardDescriptor d;
    d.variant = variant;
    d.N = N;
    if (variant == curve::Variant::Tame) {
        if (p != 0 && N % p == 0) fail(ErrorCode::WrongCharacteristic, "tame case needs p prime to 2N");
        d.finite_factors = {2, 2ULL * N};
        d.order = 4ULL * N;
    } else {
        if (p != N) fail(ErrorCode::WrongCharacteristic, "wild case needs N = p");
        d.finite_factors = {2};
        d.infinite_part = "1 + zA";
        d.exponent = N;
        d.nilpotency = (N - 1) / 2;
    }
    return d;
}

}  // namespace potts::picard
