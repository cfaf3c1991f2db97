#pragma once

// Character data for Picard groups: the eigen-decomposition of the differentials of
// y^2 = x^{2N} - 1, the subgroup it generates in Z/2 x Z/2N, and units of
// k[z]/z^m [X, 1/X] for the wild fibre.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "potts/curve.hpp"

namespace potts::picard {

using ff::Elem;
using ff::Field;

struct CharacterPair {
    unsigned eps = 0;  // mod 2
    unsigned k = 0;    // mod 2N

    friend bool operator==(const CharacterPair&, const CharacterPair&) = default;
    friend auto operator<=>(const CharacterPair&, const CharacterPair&) = default;
};

CharacterPair make_pair(std::int64_t eps, std::int64_t k, unsigned N);
CharacterPair add(const CharacterPair& a, const CharacterPair& b, unsigned N);

struct HodgeCharacters {
    unsigned N = 0;
    /// phi = -zeta, a primitive 2N-th root of unity.
    Elem phi;
    /// Eigenvalues of sigma_0 and tau on x^{i-1} dx / y, i = 1 .. N-1.
    std::vector<Elem> sigma_eigen, tau_eigen;
    /// beta(L_i).
    std::vector<CharacterPair> characters;
    /// Scalars on the top exterior power.
    Elem sigma_wedge, tau_wedge;
};

/// Errors: EvenN, InvalidArgument (N < 3), NoSuchRoot (2N does not divide q - 1).
HodgeCharacters hodge_characters(unsigned N, const Field& F);
/// F_l for the least prime l = 1 mod 2N.
Field default_character_field(unsigned N);

struct GeneratedSubgroup {
    unsigned N = 0;
    /// Sorted.
    std::vector<CharacterPair> elements;

    std::size_t order() const { return elements.size(); }
    bool contains(const CharacterPair& c) const;
};

GeneratedSubgroup subgroup_generated(const std::vector<CharacterPair>& gens, unsigned N);

/// An element of k[z]/z^m [X, 1/X] with X-exponents confined to [lo, hi].
class TruncLaurent {
public:
    /// Errors: InvalidArgument (m = 0 or lo > hi).
    TruncLaurent(Field k, unsigned m, int lo, int hi);
    static TruncLaurent constant(Field k, unsigned m, int lo, int hi, const Elem& c);
    static TruncLaurent monomial(Field k, unsigned m, int lo, int hi, const Elem& c, unsigned zdeg, int xdeg);

    Field field() const { return k_; }
    unsigned m() const { return m_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }

    /// Coefficient of z^i X^e. Errors: IndexOutOfRange.
    Elem coeff(unsigned i, int e) const;
    /// Errors: IndexOutOfRange, WindowOverflow when e lies outside the window.
    void set(unsigned i, int e, const Elem& c);

    bool is_zero() const;
    /// The z^0 layer is a single nonzero monomial c X^e.
    bool is_unit() const;
    /// The z^0 layer is exactly 1.
    bool in_one_plus_zA() const;
    /// (c, e) of the z^0 layer. Errors: NotAUnit.
    std::pair<Elem, int> monomial_layer() const;

    /// Errors: InvalidArgument for incompatible operands, WindowOverflow.
    TruncLaurent operator+(const TruncLaurent& o) const;
    TruncLaurent operator-(const TruncLaurent& o) const;
    TruncLaurent operator*(const TruncLaurent& o) const;

    friend bool operator==(const TruncLaurent& a, const TruncLaurent& b);

    std::string to_string() const;

private:
    void check_compatible(const TruncLaurent& o) const;
    std::size_t idx(unsigned i, int e) const { return i * width() + static_cast<std::size_t>(e - lo_); }
    std::size_t width() const { return static_cast<std::size_t>(hi_ - lo_ + 1); }

    Field k_;
    unsigned m_;
    int lo_, hi_;
    std::vector<Elem> c_;
};

/// Errors: NotAUnit, WindowOverflow.
TruncLaurent inverse(const TruncLaurent& u);
/// Errors: WindowOverflow.
TruncLaurent power(const TruncLaurent& u, std::uint64_t e);

struct MuStructure {
    unsigned n = 0;
    std::string description;
    /// The constants making up mu_2; empty for n = p.
    std::vector<Elem> constants;
    std::size_t samples = 0;
    /// Sampled units with u^p = 1 (each checked to lie in 1 + zA).
    std::size_t torsion_hits = 0;
    bool verified = false;
};

/// n in {2, p}; m = (p - 1)/2; samples have X-support in [-window, window].
/// Errors: InvalidArgument, WrongCharacteristic.
MuStructure mu_n_structure(const Field& k, unsigned n, int window = 2, std::size_t samples = 500,
                           std::uint64_t seed = 0x5eed5eed);

struct PicardDescriptor {
    curve::Variant variant = curve::Variant::Tame;
    unsigned N = 0;
    /// Cyclic factors of the finite part: {2, 2N} tame, {2} wild.
    std::vector<std::uint64_t> finite_factors;
    /// 4N tame; nullopt when the group is infinite.
    std::optional<std::uint64_t> order;
    /// Wild: "1 + zA", of exponent p with z^m = 0.
    std::string infinite_part;
    unsigned exponent = 0;
    unsigned nilpotency = 0;

    std::string name() const;
};

/// p = 0 stands for characteristic zero (tame only). Errors: WrongCharacteristic, EvenN, NotPrime.
PicardDescriptor picard_descriptor(curve::Variant variant, unsigned N, std::uint64_t p);

}  // namespace potts::picard
