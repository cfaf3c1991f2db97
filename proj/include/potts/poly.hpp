#pragma once

// Univariate polynomials over a finite field, over Z, and over the dyadic
// rationals Z[1/2]. Coefficient vectors are little-endian and trimmed: the zero
// polynomial has no coefficients.

#include <cstdint>
#include <string>
#include <vector>

#include "potts/field.hpp"

namespace potts::poly {

using ff::Elem;
using ff::Field;

/// Default cap on the extension degree searched by roots_over_splitting_field.
inline constexpr unsigned kDefaultSplittingCap = 12;

class Poly {
public:
    Poly() = default;
    explicit Poly(Field f) : f_(f) {}
    Poly(Field f, std::vector<Elem> coeffs);

    static Poly constant(const Elem& c);
    static Poly x(Field f);
    /// c * X^deg
    static Poly monomial(const Elem& c, std::size_t deg);
    /// Coefficients given as integers, reduced into f.
    static Poly from_ints(Field f, const std::vector<std::int64_t>& coeffs);

    Field field() const { return f_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Elem>& coeffs() const { return c_; }
    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_.zero(); }
    Elem lead() const { return c_.empty() ? f_.zero() : c_.back(); }

    Elem operator()(const Elem& x) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Elem& k) const;
    Poly operator-() const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

private:
    void trim();

    Field f_;
    std::vector<Elem> c_;
};

struct DivMod {
    Poly quotient;
    Poly remainder;
};

DivMod divmod(const Poly& a, const Poly& b);
Poly monic(const Poly& a);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly derivative(const Poly& a);
Poly pow(const Poly& a, unsigned e);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod);
/// f(g(X))
Poly compose(const Poly& f, const Poly& g);

/// Determinant of the Sylvester matrix with the deg(g) rows of f first, then
/// the deg(f) rows of g; highest coefficients leftmost. Res(X-a, X-b) = a - b.
/// A zero argument gives 0 unless the other is a nonzero constant (then 1).
Elem resultant(const Poly& f, const Poly& g);

/// All roots of f lying in its own field, with multiplicity, in ascending order.
std::vector<Elem> roots(const Poly& f);

/// Least m such that f splits into linear factors over F_{q^m}.
unsigned splitting_degree(const Poly& f);

/// F_{q^m} as a flat extension of the prime field.
Field extension_field(const Field& base, unsigned m, std::uint64_t cap = ff::kArithmeticCap);

/// Canonical embedding F_{p^s} -> F_{p^t} (s | t): the generator of the small
/// field is sent to the least root of its defining polynomial in the large one.
Elem embed(const Elem& x, const Field& target);
Poly embed(const Poly& f, const Field& target);

struct SplitRoots {
    Field field;
    std::vector<Elem> roots;
};

/// Least extension over which f splits, and all roots there (with multiplicity).
/// Errors: SplittingCapExceeded.
SplitRoots roots_over_splitting_field(const Poly& f, unsigned cap = kDefaultSplittingCap);

// ------------------------------------------------------------------ Z and Z[1/2]

/// numerator / 2^exponent, canonical: numerator odd whenever exponent > 0.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(std::int64_t numerator, unsigned exponent = 0);

    std::int64_t numerator() const { return num_; }
    unsigned exponent() const { return exp_; }
    bool is_zero() const { return num_ == 0; }

    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const;
    Dyadic operator*(const Dyadic& o) const;
    Dyadic operator-() const { return Dyadic(-num_, exp_); }

    /// "n" or "n/2^e"
    std::string to_string() const;
    /// Image in a field of odd characteristic.
    Elem reduce(const Field& f) const;

    friend bool operator==(const Dyadic&, const Dyadic&) = default;

private:
    std::int64_t num_ = 0;
    unsigned exp_ = 0;
};

Dyadic parse_dyadic(const std::string& text);

using IntPoly = std::vector<std::int64_t>;
using DyadicPoly = std::vector<Dyadic>;

IntPoly int_mul(const IntPoly& a, const IntPoly& b);
/// Exact quotient by a monic divisor; throws InvariantViolation on a remainder.
IntPoly int_exact_div(const IntPoly& a, const IntPoly& monic_divisor);
DyadicPoly to_dyadic(const IntPoly& a);

/// n-th cyclotomic polynomial via X^n - 1 = prod_{d | n} Phi_d.
IntPoly cyclotomic_phi(unsigned n);
/// Monic psi_n with Phi_n(t) = t^{phi(n)/2} psi_n(t + 1/t). Errors: EvenN.
IntPoly half_trace_psi(unsigned n);
/// chi_n(v) = 2^{-phi(n)/2} psi_n(2v), the minimal polynomial of (zeta + 1/zeta)/2. Errors: EvenN.
DyadicPoly half_trace_chi(unsigned n);
/// Coefficientwise image in F_p. Errors: EvenPrime, NotPrime.
Poly reduce_mod_p(const DyadicPoly& f, std::uint64_t p);
Poly reduce_into(const DyadicPoly& f, const Field& target);

unsigned euler_phi(unsigned n);

}  // namespace potts::poly
