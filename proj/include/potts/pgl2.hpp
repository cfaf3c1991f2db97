#pragma once

// PGL2 over a finite field: normalized matrices, orders, Dickson recognition
// of finite subgroups, and set stabilizers on the projective line.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "potts/field.hpp"

namespace potts::pgl2 {

using ff::Elem;
using ff::Field;

/// Default bound on the size of a generated subgroup.
inline constexpr std::size_t kDefaultClosureCap = 10080;

/// A point (x1 : x2) of P^1, stored normalized: (x : 1) or (1 : 0).
class ProjPoint {
public:
    ProjPoint() = default;
    static ProjPoint finite(const Elem& x) { return ProjPoint(x, false); }
    static ProjPoint infinity(const Field& f) { return ProjPoint(f.zero(), true); }
    /// From homogeneous coordinates; (0 : 0) is rejected with DegeneratePoints.
    static ProjPoint homogeneous(const Elem& x1, const Elem& x2);

    bool is_infinity() const { return inf_; }
    /// Affine coordinate; meaningless at infinity.
    const Elem& x() const { return x_; }
    Field field() const { return x_.field(); }
    Elem x1() const { return inf_ ? x_.field().one() : x_; }
    Elem x2() const { return inf_ ? x_.field().zero() : x_.field().one(); }

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.x_ == b.x_);
    }
    /// Finite points by code, then infinity.
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
        if (a.inf_ != b.inf_) return b.inf_;
        return !a.inf_ && a.x_.code() < b.x_.code();
    }

private:
    ProjPoint(Elem x, bool inf) : x_(x), inf_(inf) {}
    Elem x_;
    bool inf_ = false;
};

/// x -> (ax + b)/(cx + d), scaled so the first nonzero of (a, b, c, d) is 1.
class ProjMap {
public:
    ProjMap() = default;
    /// Errors: InvalidArgument when ad - bc = 0, MixedFields.
    ProjMap(const Elem& a, const Elem& b, const Elem& c, const Elem& d);
    static ProjMap identity(const Field& f);
    static ProjMap from_ints(const Field& f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

    Field field() const { return m_[0].field(); }
    const Elem& a() const { return m_[0]; }
    const Elem& b() const { return m_[1]; }
    const Elem& c() const { return m_[2]; }
    const Elem& d() const { return m_[3]; }
    const std::array<Elem, 4>& entries() const { return m_; }

    Elem trace() const { return m_[0] + m_[3]; }
    Elem det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
    bool is_identity() const;

    friend bool operator==(const ProjMap& x, const ProjMap& y) { return x.m_ == y.m_; }
    /// Lexicographic by entry codes; the canonical enumeration order.
    friend bool operator<(const ProjMap& x, const ProjMap& y);

private:
    std::array<Elem, 4> m_;
};

/// f o g
ProjMap compose(const ProjMap& f, const ProjMap& g);
ProjMap inverse(const ProjMap& f);
ProjMap power(const ProjMap& f, std::uint64_t n);
ProjPoint apply(const ProjMap& f, const ProjPoint& P);

/// Order via the root-of-unity criterion on tr^2/det. Errors: IdentityElement.
std::uint64_t order_by_criterion(const ProjMap& A);
/// Order by repeated composition, bounded by max(p, q + 1). Errors: IdentityElement.
std::uint64_t order_by_powering(const ProjMap& A);
/// tr^2 / det. Errors: IdentityElement.
Elem conjugacy_invariant(const ProjMap& A);

/// M_zeta for the deterministic primitive n-th root zeta, x -> x + 1 when n = p,
/// and x -> -x when n = 2 (where M_zeta is singular).
/// Errors: NoSuchRoot.
ProjMap standard_order_n(const Field& f, std::uint64_t n);
/// The same matrix for a caller-chosen zeta.
ProjMap m_zeta(const Elem& zeta);

/// The trace-zero involution swapping a <-> b and c <-> d. Errors: DegeneratePoints.
ProjMap four_point_involution(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const ProjPoint& d);

/// Breadth-first closure, sorted. Errors: ClosureCapExceeded, MixedFields.
std::vector<ProjMap> subgroup_closure(const std::vector<ProjMap>& generators,
                                      std::size_t cap = kDefaultClosureCap);

struct SubgroupClass {
    /// Cyclic, Dihedral, Alt4, Sym4, Alt5, SemidirectPC, PSL2, PGL2
    std::string tag;
    /// n for Cyclic/Dihedral, (p-rank, c-order) for SemidirectPC, q for PSL2/PGL2.
    std::vector<std::uint64_t> params;
    std::uint64_t order = 0;
    std::vector<std::string> aliases;

    /// e.g. "Dihedral(5)", "PGL2(3)", "Alt4"
    std::string name() const;
};

/// Errors: NotAGroup, UnrecognizedSubgroup.
SubgroupClass classify_subgroup(const std::vector<ProjMap>& G);

/// All q^3 - q elements, sorted. Errors: SizeCapExceeded when q > 49.
std::vector<ProjMap> enumerate_pgl2(const Field& f);

/// Fixed points of f rational over its field, sorted.
std::vector<ProjPoint> fixed_points(const ProjMap& f);

struct OrderPSurvey {
    std::uint64_t order_p_count = 0;
    bool all_unipotent = true;
    std::vector<ProjPoint> fixed_point_union;
};

/// Errors: SizeCapExceeded.
OrderPSurvey survey_order_p(const Field& f);

/// The homography sending 0, infinity, 1 to P, Q, R. Errors: DegeneratePoints.
ProjMap from_triple(const ProjPoint& P, const ProjPoint& Q, const ProjPoint& R);

/// All homographies over `ambient` mapping sigma onto itself, sorted.
/// Errors: TooFewPoints, DegeneratePoints, MixedFields.
std::vector<ProjMap> stabilizer_of_set(const std::vector<ProjPoint>& sigma, const Field& ambient);

/// Re-expresses a point over a larger field.
ProjPoint embed(const ProjPoint& P, const Field& target);
ProjMap embed(const ProjMap& f, const Field& target);

}  // namespace potts::pgl2
