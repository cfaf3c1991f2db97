#pragma once

// Potts curve models
//   tame: y^2 = x^{2N} + A x^N + B          (p does not divide 2N)
//   wild: y^2 = (x^p - x)^2 + A (x^p - x) + B (N = p)
// with their invariants, explicit automorphisms, isomorphism witnesses and the
// automorphism-group decision procedure checked against a stabilizer oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "potts/pgl2.hpp"
#include "potts/poly.hpp"

namespace potts::curve {

using ff::Elem;
using ff::Field;
using pgl2::ProjMap;
using pgl2::ProjPoint;
using poly::Poly;

enum class Variant { Tame, Wild };

std::string to_string(Variant v);

struct PottsModel {
    Variant variant = Variant::Tame;
    unsigned N = 0;
    Field field;
    Elem A, B;
    /// sigma acts by x -> zeta^k x for the deterministic zeta; [chi] is {k, -k} mod N.
    unsigned sigma_exponent = 1;

    static PottsModel tame(unsigned N, const Elem& A, const Elem& B, unsigned sigma_exponent = 1);
    static PottsModel wild(const Elem& A, const Elem& B);

    /// The degree-2N right-hand side over `target` (a field containing the model's field).
    Poly rhs(const Field& target) const;
};

struct BranchData {
    /// Least extension of the model's field over which all branch points are rational.
    Field field;
    std::vector<ProjPoint> sigma;
    std::vector<ProjPoint> orbit1, orbit2;
    /// The induced action on P^1: x -> zeta^k x or x -> x + 1.
    ProjMap sigma0;
    /// zeta^k (tame) or 1 (wild), over `field`.
    Elem sigma_scalar;
    /// Wild only: roots r, s of T^2 + AT + B and Artin-Schreier roots alpha, beta.
    std::optional<Elem> r, s, alpha, beta;
    unsigned genus = 0;
};

/// Errors: SingularModel, WrongCharacteristic, EvenN, SplittingCapExceeded.
BranchData validate(const PottsModel& m, unsigned splitting_cap = poly::kDefaultSplittingCap);

/// B/(A^2 - 4B) or 1/(A^2 - 4B). Errors: SingularModel.
Elem j_invariant(const PottsModel& m);

/// Remark-style normal form: (1 + 4j, j(1 + 4j)) or (0, -1) at j = -1/4; wild (0, -1/(4j)).
/// Errors: ZeroElement, WrongCharacteristic.
PottsModel canonical_model_from_j(unsigned N, const Field& F, const Elem& j, Variant variant);

/// Least extension of F containing a primitive n-th root of unity.
Field cyclotomic_extension(const Field& F, std::uint64_t n);
/// The deterministic primitive n-th root of unity: that of cyclotomic_extension(F, n), embedded into target.
Elem standard_root_of_unity(const Field& F, std::uint64_t n, const Field& target);

/// (x, y) -> ((ax + b)/(cx + d), kappa y / (cx + d)^N), modulo (M, kappa) ~ (lM, l^N kappa).
struct AutomorphismMap {
    std::string name;
    Elem a, b, c, d;
    Elem kappa;
};

AutomorphismMap compose(const AutomorphismMap& f, const AutomorphismMap& g, unsigned N);
AutomorphismMap inverse(const AutomorphismMap& f, unsigned N);
bool is_identity(const AutomorphismMap& f, unsigned N);
bool equivalent(const AutomorphismMap& f, const AutomorphismMap& g, unsigned N);
/// kappa^2 F(x) = (cx + d)^{2N} F((ax + b)/(cx + d)) as polynomials.
bool preserves_curve(const AutomorphismMap& f, const Poly& rhs, unsigned N);

struct CurvePoint {
    Elem x, y;
};

struct RelationReport {
    bool sigma_order = false;      // sigma^N = 1
    bool tau_involution = false;   // tau^2 = 1
    bool tau_central = false;      // tau commutes with sigma and mu
    bool mu_involution = false;    // mu^2 = 1
    bool mu_conjugation = false;   // mu sigma mu^-1 = sigma^-1
    bool maps_preserve_curve = false;
    std::size_t sampled_points = 0;
    bool sampled_relations = false;
    /// tau fixes 2N branch points forming two sigma-orbits of size N
    bool tau_fixed_points = false;

    bool all_pass() const;
};

struct Automorphisms {
    /// Field over which sigma, tau, mu and the sampled points are defined.
    Field field;
    AutomorphismMap sigma, tau, mu;
    RelationReport report;
};

/// Errors: RootExtractionFailed.
Automorphisms automorphisms(const PottsModel& m, unsigned splitting_cap = poly::kDefaultSplittingCap);

struct Witness {
    /// Field of definition of the explicit witness.
    Field field;
    unsigned degree = 0;
    /// lambda (tame) or t (wild).
    Elem value;
    /// tame: 1 for x -> lambda x, 2 for x -> lambda / x; wild: 0.
    int kind = 0;
};

struct IsoResult {
    bool geometric = false;
    bool j_match = false;
    /// Tame only.
    std::optional<bool> chi_class_match;
    std::optional<Witness> witness;
    /// Extension degrees searched for the witness.
    unsigned searched_up_to = 0;
};

/// Errors: VariantMismatch, MixedFields.
IsoResult is_isomorphic(const PottsModel& m1, const PottsModel& m2, unsigned search_cap = poly::kDefaultSplittingCap);

/// Least witness for a pair of models, or nullopt when none exists up to `search_cap`.
std::optional<Witness> find_witness(const PottsModel& m1, const PottsModel& m2, unsigned search_cap);

enum class AutTag { TwoTimesDihedralN, TwoTimesDihedral2N, RepGroupSym4, PGL2FiberProduct, WildTwoTimesDihedralP };

std::string to_string(AutTag t);

struct AutClassification {
    AutTag tag = AutTag::TwoTimesDihedralN;
    std::uint64_t order = 0;
    std::uint64_t equivariant_order = 0;
    /// q for PGL2FiberProduct.
    std::uint64_t q = 0;
};

/// Errors: SingularModel, WrongCharacteristic.
AutClassification classify_aut(const PottsModel& m);

struct OracleResult {
    std::uint64_t G_order = 0;
    std::uint64_t aut_order = 0;
    std::uint64_t equivariant_order = 0;
    pgl2::SubgroupClass G_class;
    /// Every element of G lifts to (M, +-kappa) with kappa^2 = lambda_M.
    bool lifts_ok = false;
    /// Largest element order among the 2|G| lifted automorphisms.
    std::uint64_t max_lift_order = 0;
    /// tau = (1, -1) commutes with every lifted automorphism.
    bool tau_central = false;
};

/// Errors: SplittingCapExceeded, ClosureCapExceeded.
OracleResult aut_order_oracle(const PottsModel& m, unsigned splitting_cap = poly::kDefaultSplittingCap);

struct SquareRootCheck {
    ProjMap S;
    ProjMap M_zeta;
    Elem phi;
    bool square_ok = false;
    std::uint64_t order = 0;
};

/// S = M_zeta + (phi + 1/phi) id with zeta = phi^2 for the deterministic 2N-th root phi.
/// Errors: NoSuchRoot.
SquareRootCheck quarter_j_square_root_check(unsigned N, const Field& F);

}  // namespace potts::curve
