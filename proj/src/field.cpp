#include "potts/field.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>

namespace potts::ff {

namespace detail {

struct FieldData {
    std::uint64_t p = 0;
    unsigned s = 0;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> modulus;  // monic, length s+1
    std::vector<std::uint64_t> ppow;     // p^i, i = 0..s
    std::uint64_t generator = 0;
    // exp/log tables for fields small enough to tabulate (s > 1 only)
    std::vector<std::uint32_t> exp_table;
    std::vector<std::uint32_t> log_table;
};

}  // namespace detail

using detail::FieldData;

namespace {

constexpr std::uint64_t kTableCap = std::uint64_t{1} << 20;
constexpr unsigned kMaxDegree = 64;

using Digits = std::array<std::uint64_t, 2 * kMaxDegree>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

void decode(const FieldData& f, std::uint64_t v, Digits& out) {
    for (unsigned i = 0; i < f.s; ++i) {
        out[i] = v % f.p;
        v /= f.p;
    }
}

std::uint64_t encode(const FieldData& f, const Digits& d) {
    std::uint64_t v = 0;
    for (unsigned i = f.s; i-- > 0;) v = v * f.p + d[i];
    return v;
}

// Polynomial product of two degree < s digit vectors, reduced mod the defining polynomial.
std::uint64_t mul_slow(const FieldData& f, std::uint64_t a, std::uint64_t b) {
    if (f.s == 1) return mulmod(a, b, f.p);
    Digits x{}, y{}, r{};
    decode(f, a, x);
    decode(f, b, y);
    const unsigned s = f.s;
    const std::uint64_t p = f.p;
    for (unsigned i = 0; i < s; ++i) {
        if (!x[i]) continue;
        for (unsigned j = 0; j < s; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p;
    }
    for (unsigned k = 2 * s - 1; k-- > s;) {
        std::uint64_t c = r[k];
        if (!c) continue;
        r[k] = 0;
        // X^s = -sum modulus[i] X^i
        for (unsigned i = 0; i < s; ++i) {
            if (f.modulus[i]) r[k - s + i] = (r[k - s + i] + (p - f.modulus[i]) * c) % p;
        }
    }
    return encode(f, r);
}

std::uint64_t pow_slow(const FieldData& f, std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul_slow(f, r, b);
        b = mul_slow(f, b, b);
        e >>= 1;
    }
    return r;
}

// ---- F_p[X] helpers for irreducibility testing (little-endian, trimmed) ----

using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly poly_mod(ModPoly a, const ModPoly& m, std::uint64_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t inv_lead = powmod(m.back(), p - 2, p);
    while (a.size() > dm) {
        std::uint64_t c = mulmod(a.back(), inv_lead, p);
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - mulmod(c, m[i], p))) % p;
        trim(a);
    }
    return a;
}

ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    return poly_mod(std::move(r), m, p);
}

ModPoly poly_powmod(ModPoly b, std::uint64_t e, const ModPoly& m, std::uint64_t p) {
    ModPoly r{1};
    b = poly_mod(std::move(b), m, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, b, m, p);
        b = poly_mulmod(b, b, m, p);
        e >>= 1;
    }
    return r;
}

ModPoly poly_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = poly_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

ModPoly poly_sub(ModPoly a, const ModPoly& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

// X^(p^k) mod m
ModPoly frobenius_power(const ModPoly& m, unsigned k, std::uint64_t p) {
    ModPoly x{0, 1};
    ModPoly r = poly_mod(x, m, p);
    for (unsigned i = 0; i < k; ++i) r = poly_powmod(r, p, m, p);
    return r;
}

std::uint64_t find_generator(const FieldData& f) {
    if (f.q == 3) return 2;
    auto factors = factorize(f.q - 1);
    for (std::uint64_t g = 2; g < f.q; ++g) {
        bool ok = true;
        for (auto [r, e] : factors) {
            if (pow_slow(f, g, (f.q - 1) / r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    fail(ErrorCode::InvariantViolation, "no multiplicative generator found");
}

std::unique_ptr<FieldData> build_field(std::uint64_t p, unsigned s) {
    auto f = std::make_unique<FieldData>();
    f->p = p;
    f->s = s;
    f->q = ipow(p, s);
    f->ppow.resize(s + 1);
    f->ppow[0] = 1;
    for (unsigned i = 1; i <= s; ++i) f->ppow[i] = f->ppow[i - 1] * p;
    if (s == 1) {
        f->modulus = {0, 1};
    } else {
        const std::uint64_t count = f->q;  // candidates for the lower coefficients
        for (std::uint64_t code = 0; code < count; ++code) {
            ModPoly m(s + 1, 0);
            std::uint64_t c = code;
            for (unsigned i = 0; i < s; ++i) {
                m[i] = c % p;
                c /= p;
            }
            m[s] = 1;
            if (m[0] == 0) continue;
            if (is_irreducible_mod_p(m, p)) {
                f->modulus = std::move(m);
                break;
            }
        }
        ensure(!f->modulus.empty(), "no irreducible polynomial found");
    }
    f->generator = find_generator(*f);
    if (s > 1 && f->q <= kTableCap) {
        f->exp_table.resize(f->q - 1);
        f->log_table.assign(f->q, 0);
        std::uint64_t x = 1;
        for (std::uint64_t i = 0; i + 1 < f->q; ++i) {
            f->exp_table[i] = static_cast<std::uint32_t>(x);
            f->log_table[x] = static_cast<std::uint32_t>(i);
            x = mul_slow(*f, x, f->generator);
        }
    }
    return f;
}

struct Registry {
    std::mutex mu;
    std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<FieldData>> fields;
};

Registry& registry() {
    static Registry r;
    return r;
}

const FieldData& data_of(const Elem& x) {
    const auto* d = x.field().data();
    if (!d) fail(ErrorCode::InvalidArgument, "element of an uninitialized field");
    return *d;
}

void check_same(const Elem& a, const Elem& b) {
    if (a.field() != b.field()) fail(ErrorCode::MixedFields, "operands belong to different fields");
}

std::uint64_t add_codes(const FieldData& f, std::uint64_t a, std::uint64_t b) {
    if (f.s == 1) {
        std::uint64_t r = a + b;
        return r >= f.p ? r - f.p : r;
    }
    std::uint64_t r = 0;
    for (unsigned i = 0; i < f.s; ++i) {
        std::uint64_t d = a % f.p + b % f.p;
        if (d >= f.p) d -= f.p;
        r += d * f.ppow[i];
        a /= f.p;
        b /= f.p;
    }
    return r;
}

std::uint64_t neg_code(const FieldData& f, std::uint64_t a) {
    if (f.s == 1) return a == 0 ? 0 : f.p - a;
    std::uint64_t r = 0;
    for (unsigned i = 0; i < f.s; ++i) {
        std::uint64_t d = a % f.p;
        r += (d == 0 ? 0 : f.p - d) * f.ppow[i];
        a /= f.p;
    }
    return r;
}

std::uint64_t mul_codes(const FieldData& f, std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (!f.log_table.empty()) {
        std::uint64_t e = std::uint64_t{f.log_table[a]} + f.log_table[b];
        if (e >= f.q - 1) e -= f.q - 1;
        return f.exp_table[e];
    }
    return mul_slow(f, a, b);
}

}  // namespace

// ---------------------------------------------------------------- utilities

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) fail(ErrorCode::Overflow, "integer power overflows 64 bits");
        r *= base;
    }
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % d == 0) return n == d;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_irreducible_mod_p(std::span<const std::uint64_t> monic, std::uint64_t p) {
    ModPoly m(monic.begin(), monic.end());
    trim(m);
    if (m.size() < 2) return false;
    const unsigned s = static_cast<unsigned>(m.size() - 1);
    if (s == 1) return true;
    ModPoly x{0, 1};
    // X^(p^s) = X mod m
    if (poly_sub(frobenius_power(m, s, p), x, p) != ModPoly{}) return false;
    for (auto [r, e] : factorize(s)) {
        ModPoly h = poly_sub(frobenius_power(m, s / static_cast<unsigned>(r), p), x, p);
        ModPoly g = poly_gcd(m, h, p);
        if (g.size() != 1) return false;
    }
    return true;
}

Field make_field(std::uint64_t p, unsigned s, std::uint64_t cap) {
    if (p == 2) fail(ErrorCode::EvenCharacteristic, "characteristic 2 is not supported");
    if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (s == 0) fail(ErrorCode::InvalidArgument, "extension degree must be positive");
    if (s > kMaxDegree || p > (std::uint64_t{1} << 31)) fail(ErrorCode::SizeCapExceeded, "field too large");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < s; ++i) {
        if (q > cap / p) fail(ErrorCode::SizeCapExceeded, "p^s exceeds the size cap");
        q *= p;
    }
    if (q > cap) fail(ErrorCode::SizeCapExceeded, "p^s exceeds the size cap");
    auto& reg = registry();
    std::lock_guard lock(reg.mu);
    auto& slot = reg.fields[{p, s}];
    if (!slot) slot = build_field(p, s);
    return Field(slot.get());
}

Field parse_field_spec(std::string_view spec, std::uint64_t cap) {
    auto parse_uint = [&](std::string_view t) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
            fail(ErrorCode::InvalidArgument, "malformed field spec '" + std::string(spec) + "'");
        return v;
    };
    auto caret = spec.find('^');
    if (caret != std::string_view::npos) {
        std::uint64_t p = parse_uint(spec.substr(0, caret));
        std::uint64_t s = parse_uint(spec.substr(caret + 1));
        return make_field(p, static_cast<unsigned>(s), cap);
    }
    std::uint64_t q = parse_uint(spec);
    auto fac = factorize(q);
    if (fac.size() != 1) fail(ErrorCode::NotPrime, "field order " + std::to_string(q) + " is not a prime power");
    return make_field(fac[0].first, fac[0].second, cap);
}

// ---------------------------------------------------------------- Field

std::uint64_t Field::characteristic() const { return d_->p; }
unsigned Field::degree() const { return d_->s; }
std::uint64_t Field::order() const { return d_->q; }
std::span<const std::uint64_t> Field::modulus() const { return d_->modulus; }
Elem Field::generator() const { return Elem(d_, d_->generator); }
Elem Field::zero() const { return Elem(d_, 0); }
Elem Field::one() const { return Elem(d_, 1); }

Elem Field::from_int(std::int64_t value) const {
    std::int64_t p = static_cast<std::int64_t>(d_->p);
    std::int64_t r = value % p;
    if (r < 0) r += p;
    return Elem(d_, static_cast<std::uint64_t>(r));
}

Elem Field::from_coeffs(std::span<const std::uint64_t> coeffs) const {
    if (coeffs.size() > d_->s) fail(ErrorCode::InvalidArgument, "too many coefficients for " + spec());
    std::uint64_t v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= d_->p) fail(ErrorCode::InvalidArgument, "coefficient not reduced mod p");
        v = v * d_->p + coeffs[i];
    }
    return Elem(d_, v);
}

Elem Field::from_code(std::uint64_t code) const {
    if (code >= d_->q) fail(ErrorCode::InvalidArgument, "element code out of range");
    return Elem(d_, code);
}

std::string Field::spec() const {
    if (d_->s == 1) return std::to_string(d_->p);
    return std::to_string(d_->p) + "^" + std::to_string(d_->s);
}

// ---------------------------------------------------------------- Elem

std::vector<std::uint64_t> Elem::coeffs() const {
    const auto& f = data_of(*this);
    std::vector<std::uint64_t> out(f.s);
    std::uint64_t v = v_;
    for (unsigned i = 0; i < f.s; ++i) {
        out[i] = v % f.p;
        v /= f.p;
    }
    return out;
}

bool Elem::is_one() const { return v_ == 1; }

Elem Elem::operator+(const Elem& o) const {
    check_same(*this, o);
    return Elem(f_, add_codes(*f_, v_, o.v_));
}

Elem Elem::operator-(const Elem& o) const {
    check_same(*this, o);
    return Elem(f_, add_codes(*f_, v_, neg_code(*f_, o.v_)));
}

Elem Elem::operator-() const { return Elem(f_, neg_code(data_of(*this), v_)); }

Elem Elem::operator*(const Elem& o) const {
    check_same(*this, o);
    return Elem(f_, mul_codes(*f_, v_, o.v_));
}

Elem Elem::inv() const {
    const auto& f = data_of(*this);
    if (v_ == 0) fail(ErrorCode::ZeroElement, "inverse of zero");
    if (!f.log_table.empty()) {
        std::uint64_t l = f.log_table[v_];
        return Elem(f_, f.exp_table[l == 0 ? 0 : f.q - 1 - l]);
    }
    if (f.s == 1) return Elem(f_, powmod(v_, f.p - 2, f.p));
    return Elem(f_, pow_slow(f, v_, f.q - 2));
}

Elem Elem::operator/(const Elem& o) const {
    check_same(*this, o);
    return *this * o.inv();
}

Elem Elem::pow(std::uint64_t e) const {
    const auto& f = data_of(*this);
    if (v_ == 0) return Elem(f_, e == 0 ? 1 : 0);
    e %= (f.q - 1);
    if (!f.log_table.empty()) {
        std::uint64_t l = static_cast<std::uint64_t>((static_cast<unsigned __int128>(f.log_table[v_]) * e) % (f.q - 1));
        return Elem(f_, f.exp_table[l]);
    }
    if (f.s == 1) return Elem(f_, powmod(v_, e, f.p));
    return Elem(f_, pow_slow(f, v_, e));
}

Elem Elem::pow(std::int64_t e) const {
    if (e >= 0) return pow(static_cast<std::uint64_t>(e));
    return inv().pow(static_cast<std::uint64_t>(-(e + 1)) + 1);
}

// ---------------------------------------------------------------- operations

std::uint64_t element_order(const Elem& x) {
    if (x.is_zero()) fail(ErrorCode::ZeroElement, "order of zero is undefined");
    std::uint64_t n = x.field().order() - 1;
    for (auto [r, e] : factorize(n)) {
        for (unsigned i = 0; i < e; ++i) {
            if (x.pow(n / r).is_one())
                n /= r;
            else
                break;
        }
    }
    return n;
}

Elem primitive_root_of_unity(const Field& f, std::uint64_t n) {
    if (n == 0 || (f.order() - 1) % n != 0)
        fail(ErrorCode::NoSuchRoot,
             "no primitive " + std::to_string(n) + "-th root of unity in F_" + std::to_string(f.order()));
    return f.generator().pow((f.order() - 1) / n);
}

std::optional<Elem> square_root(const Elem& x) {
    if (x.is_zero()) return x;
    const Field f = x.field();
    const std::uint64_t q = f.order();
    if (!x.pow((q - 1) / 2).is_one()) return std::nullopt;
    // Tonelli-Shanks with the generator as non-residue
    std::uint64_t odd = q - 1;
    unsigned s = 0;
    while ((odd & 1) == 0) {
        odd >>= 1;
        ++s;
    }
    Elem z = f.generator().pow(odd);
    Elem t = x.pow(odd);
    Elem r = x.pow((odd + 1) / 2);
    unsigned m = s;
    while (!t.is_one()) {
        unsigned i = 0;
        Elem t2 = t;
        while (!t2.is_one()) {
            t2 = t2 * t2;
            ++i;
        }
        Elem b = z;
        for (unsigned k = 0; k + i + 1 < m; ++k) b = b * b;
        r = r * b;
        z = b * b;
        t = t * z;
        m = i;
    }
    Elem other = -r;
    return std::min(r, other);
}

}  // namespace potts::ff
