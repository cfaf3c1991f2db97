#pragma once

// The half-trace rings Z[1/2][v]/chi_N(v) and their fibres mod p.

#include <cstdint>
#include <string>
#include <vector>

#include "potts/poly.hpp"

namespace potts::cyclo {

using poly::Dyadic;
using poly::DyadicPoly;

/// Residue class mod chi_N, stored as phi(N)/2 dyadic coefficients.
class HalfTraceElem {
public:
    /// Errors: EvenN.
    HalfTraceElem(unsigned N, DyadicPoly coeffs);
    static HalfTraceElem constant(unsigned N, const Dyadic& c);
    /// The class of v, i.e. (zeta + 1/zeta)/2.
    static HalfTraceElem v(unsigned N);

    unsigned N() const { return n_; }
    const DyadicPoly& coeffs() const { return c_; }
    bool is_zero() const;

    /// Errors: MixedModulus.
    HalfTraceElem operator+(const HalfTraceElem& o) const;
    HalfTraceElem operator-(const HalfTraceElem& o) const;
    HalfTraceElem operator*(const HalfTraceElem& o) const;

    friend bool operator==(const HalfTraceElem&, const HalfTraceElem&) = default;

private:
    unsigned n_;
    DyadicPoly c_;
};

struct FibreDescriptor {
    bool empty = false;
    /// Over the algebraic closure of F_p.
    unsigned components = 0;
    unsigned multiplicity = 0;
    bool reduced = false;
};

/// Errors: EvenPrime, EvenN, NotPrime.
FibreDescriptor fibre_mod_p(unsigned N, std::uint64_t p);

/// All roots of chi_N in F, ascending; there are phi(N)/2 of them. Errors: NoSuchRoot.
std::vector<ff::Elem> embed_half_trace(unsigned N, const ff::Field& F);

}  // namespace potts::cyclo
