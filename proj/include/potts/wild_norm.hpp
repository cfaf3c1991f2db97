#pragma once

// Norms of an order-p affine action X -> tX + psi, the invariant H and its
// resultant, and the wild j-invariant with its coordinate-change behaviour.

#include <cstdint>
#include <optional>
#include <vector>

#include "potts/poly.hpp"

namespace potts::wild {

using ff::Elem;
using ff::Field;
using poly::Poly;

class NormContext {
public:
    /// Errors: NotPrime, EvenPrime, InvalidArgument when 1 + t + ... + t^{p-1} != 0,
    /// t = 1 and psi = 0, or U = 0; MixedFields.
    NormContext(unsigned p, const Elem& t, const Elem& psi, const Elem& U, const Elem& A, const Elem& B);

    unsigned p() const { return p_; }
    Field field() const { return t_.field(); }
    const Elem& t() const { return t_; }
    const Elem& psi() const { return psi_; }
    const Elem& U() const { return U_; }
    const Elem& A() const { return A_; }
    const Elem& B() const { return B_; }

private:
    unsigned p_;
    Elem t_, psi_, U_, A_, B_;
};

/// t^[i] = 1 + t + ... + t^{i-1}. Errors: IndexOutOfRange unless 0 <= i <= p.
Elem partial_sum(const NormContext& ctx, unsigned i);

/// prod_{i<p} (X - t^[i] psi), monic of degree p.
Poly norm_poly(const NormContext& ctx);

/// t^[1] ... t^[p-1]. When t != 1, asserts omega (t - 1)^{p-1} = p.
Elem omega(const NormContext& ctx);
/// As omega, but raises TEqualsOne at t = 1.
Elem omega_checked(const NormContext& ctx);

struct HDelta {
    Poly H;
    Elem delta;
};

/// H = U N^2 + A N + B and delta = U psi^{2p} - A psi^p (t-1)^p + B (t-1)^{2p}.
HDelta build_H_delta(const NormContext& ctx);

struct ResultantCheck {
    Elem lhs, rhs;
    bool holds = false;
};

/// Res(H, dH/dX) against -U^p omega^{2p} delta^{p-1} (A^2 - 4BU)^p. Errors: TEqualsOne.
ResultantCheck resultant_identity(const NormContext& ctx);
bool verify_resultant_identity(const NormContext& ctx);

/// U delta / (A^2 - 4UB). Errors: SingularConfiguration.
Elem wild_j(const NormContext& ctx);

struct Affine {
    Elem alpha, beta;
};
/// Section swap with Bezout data u (t - 1) + v psi = 1; nullopt picks the documented choice.
struct DeltaSwap {
    std::optional<Elem> u, v;
};

struct ChangeReport {
    /// Normalized to U = 1.
    NormContext context;
    /// H in the new coordinates equals scale * H in the old ones (both with U = 1).
    Elem scale;
    /// Affine: xi with N'(alpha X + beta) = alpha^p N(X) + xi.
    std::optional<Elem> xi;
    /// DeltaSwap: delta' delta = 1.
    bool delta_product_one = true;
    bool j_invariant = false;
};

/// Errors: DegenerateChange (alpha = 0), InvalidArgument (bad Bezout data), SingularConfiguration.
ChangeReport change_coordinates(const NormContext& ctx, const Affine& mode);
ChangeReport change_coordinates(const NormContext& ctx, const DeltaSwap& mode);

struct InvariantSubspace {
    /// Reduced row-echelon basis of {f : deg f <= p, f(tX + psi) = f(X)}.
    std::vector<Poly> basis;
    bool matches_norm = false;
};

InvariantSubspace invariant_subspace(const NormContext& ctx);
bool invariant_subspace_check(const NormContext& ctx);

/// Elements of exact order p in F. Errors: NoSuchRoot when p does not divide q - 1.
std::vector<Elem> roots_of_order_p(unsigned p, const Field& F);

}  // namespace potts::wild
