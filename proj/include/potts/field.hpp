#pragma once

// Exact arithmetic in F_p and flat extensions F_{p^s}.
//
// A field is identified by (p, s); its defining polynomial is the least monic
// irreducible of degree s over F_p, where polynomials are ordered by the base-p
// code c_0 + c_1 p + ... + c_{s-1} p^{s-1} of their non-leading coefficients.
// Elements are stored by the same code of their coefficient vector in the
// generator, which also gives the documented total order on elements.
//
// Field descriptors are interned: make_field(p, s) always returns a handle to
// the same immutable data, so handles compare by identity and may be shared
// freely between threads.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "potts/error.hpp"

namespace potts::ff {

/// Default bound on q accepted by make_field.
inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 20;
/// Bound on q for fields built internally by splitting-field and witness searches.
inline constexpr std::uint64_t kArithmeticCap = std::uint64_t{1} << 48;

namespace detail {
struct FieldData;
}

class Elem;

class Field {
public:
    Field() = default;
    explicit Field(const detail::FieldData* data) : d_(data) {}

    std::uint64_t characteristic() const;
    unsigned degree() const;
    std::uint64_t order() const;
    /// Defining polynomial, monic, little-endian, length degree()+1.
    std::span<const std::uint64_t> modulus() const;
    /// Deterministic multiplicative generator: the least element of order q-1.
    Elem generator() const;

    Elem zero() const;
    Elem one() const;
    Elem from_int(std::int64_t value) const;
    Elem from_coeffs(std::span<const std::uint64_t> coeffs) const;
    Elem from_code(std::uint64_t code) const;

    /// "p" for prime fields, "p^s" otherwise.
    std::string spec() const;

    bool valid() const { return d_ != nullptr; }
    const detail::FieldData* data() const { return d_; }

    friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }

private:
    const detail::FieldData* d_ = nullptr;
};

class Elem {
public:
    Elem() = default;
    Elem(const detail::FieldData* f, std::uint64_t code) : f_(f), v_(code) {}

    Field field() const { return Field(f_); }
    std::uint64_t code() const { return v_; }
    std::vector<std::uint64_t> coeffs() const;
    bool is_zero() const { return v_ == 0; }
    bool is_one() const;

    Elem operator+(const Elem& o) const;
    Elem operator-(const Elem& o) const;
    Elem operator*(const Elem& o) const;
    Elem operator/(const Elem& o) const;
    Elem operator-() const;
    Elem& operator+=(const Elem& o) { return *this = *this + o; }
    Elem& operator-=(const Elem& o) { return *this = *this - o; }
    Elem& operator*=(const Elem& o) { return *this = *this * o; }
    Elem& operator/=(const Elem& o) { return *this = *this / o; }

    Elem inv() const;
    Elem pow(std::uint64_t e) const;
    Elem pow(std::int64_t e) const;
    Elem pow(int e) const { return pow(static_cast<std::int64_t>(e)); }

    friend bool operator==(const Elem& a, const Elem& b) { return a.f_ == b.f_ && a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Elem& a, const Elem& b) { return a.v_ <=> b.v_; }

private:
    const detail::FieldData* f_ = nullptr;
    std::uint64_t v_ = 0;
};

inline Elem operator*(std::int64_t k, const Elem& x) { return x.field().from_int(k) * x; }

bool is_prime(std::uint64_t n);
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// F_{p^s}. Errors: NotPrime, EvenCharacteristic, SizeCapExceeded.
Field make_field(std::uint64_t p, unsigned s, std::uint64_t cap = kDefaultSizeCap);

/// Parses "p^s", "p", or a prime power "q" such as "9".
Field parse_field_spec(std::string_view spec, std::uint64_t cap = kDefaultSizeCap);

/// Least n >= 1 with x^n = 1, via the factorization of q-1. Errors: ZeroElement.
std::uint64_t element_order(const Elem& x);

/// generator^((q-1)/n), an element of exact order n. Errors: NoSuchRoot.
Elem primitive_root_of_unity(const Field& f, std::uint64_t n);

/// The root of x with the smaller code, or nullopt when x is a non-square.
std::optional<Elem> square_root(const Elem& x);

/// Minimal polynomial roots etc. use these; exposed for tests.
bool is_irreducible_mod_p(std::span<const std::uint64_t> monic, std::uint64_t p);

}  // namespace potts::ff
