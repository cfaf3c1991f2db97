#pragma once

// Isomorphism-class census over small finite fields and the combinatorics of
// the two boundary points of the compactified moduli.

#include <cstdint>
#include <string>
#include <vector>

#include "potts/curve.hpp"

namespace potts::moduli {

using ff::Elem;
using ff::Field;

struct CensusRow {
    Elem A, B, j;
    std::size_t class_id = 0;
};

struct CensusReport {
    curve::Variant variant = curve::Variant::Tame;
    unsigned N = 0;
    std::uint64_t q = 0;
    std::size_t models = 0;
    std::size_t distinct_j = 0;
    /// Classes of the witness graph.
    std::size_t classes = 0;
    std::size_t expected = 0;
    bool match = false;
    /// Largest extension degree among the within-bucket witnesses.
    unsigned max_witness_degree = 0;
    std::size_t within_pairs = 0;
    std::size_t cross_pairs = 0;
    /// Cross-bucket pairs for which a witness turned up (expected 0).
    std::size_t cross_witnesses = 0;
    /// Sorted by (A, B); class ids follow the order of j codes.
    std::vector<CensusRow> rows;
};

/// Errors: WrongCharacteristic, EvenN, SplittingCapExceeded.
CensusReport census_tame(unsigned N, const Field& F, unsigned search_cap = poly::kDefaultSplittingCap);
/// Errors: WrongCharacteristic, SplittingCapExceeded.
CensusReport census_wild(const Field& F, unsigned search_cap = poly::kDefaultSplittingCap);

/// "A,B,j,class" header followed by one line per model, field elements as codes.
std::string census_csv(const CensusReport& r);

struct CuspDescriptor {
    unsigned components = 0;
    unsigned genus1 = 0, genus2 = 0;
    unsigned nodes = 0;
    /// "infinity" or "0".
    std::string j_limit;

    /// g1 + g2 + nodes - 1 = N - 1.
    bool genus_accounting(unsigned N) const { return genus1 + genus2 + nodes - 1 == N - 1; }
};

/// The two stable degenerations, j = infinity first. Errors: EvenN, InvalidArgument (N < 3).
std::pair<CuspDescriptor, CuspDescriptor> cusp_combinatorics(unsigned N);

struct DegenerationRecord {
    /// x^{2N} + 2x^N + 1 = (x^N + 1)^2.
    bool square_ok = false;
    /// y = x^N + 1 and y = -(x^N + 1) differ.
    bool components_distinct = false;
    Field splitting_field;
    unsigned splitting_degree = 0;
    /// Distinct roots of x^N + 1 over the splitting field, sorted.
    std::vector<Elem> intersection;
    bool matches_cusp = false;
};

/// Errors: WrongCharacteristic, EvenN, SplittingCapExceeded.
DegenerationRecord degeneration_check(unsigned N, const Field& F, unsigned cap = poly::kDefaultSplittingCap);

}  // namespace potts::moduli
