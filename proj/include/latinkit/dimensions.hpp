#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latinkit/core.hpp"

// Finite concept classes: shattering, VC-dimension, teaching dimensions and
// the recursive teaching dimension, instantiated on Latin squares as classes
// over the universe {1..n}^3.

namespace latinkit::dims {

// Concepts are bitsets over 0..universe_size-1, stored as 64-bit words.
using Bitset = std::vector<std::uint64_t>;

struct ConceptClass {
    std::uint32_t universe_size = 0;
    std::vector<Bitset> concepts;  // pairwise distinct

    // point lists -> bitsets; throws on duplicates among concepts or points
    // out of range.
    static ConceptClass make(std::uint32_t universe_size,
                             const std::vector<std::vector<std::uint32_t>>& concept_points);

    bool contains_point(std::size_t concept_idx, std::uint32_t point) const {
        return concepts[concept_idx][point / 64] >> (point % 64) & 1;
    }
};

struct DimensionReport {
    int vc = 0;
    int td_min = 0;
    int td_max = 0;
    int rtd = 0;
    std::uint64_t shattered_count = 0;
};

inline constexpr int kLatinClassGuard = 4;

// All order-n Latin squares as concepts over the n^3 triples.
ConceptClass latin_concept_class(int order, int max_order = kLatinClassGuard);

// Point id <-> triple for the Latin instance.
std::uint32_t latin_point_id(int order, const Triple& t);
Triple latin_point_triple(int order, std::uint32_t point);

inline constexpr std::uint32_t kShatterUniverseGuard = 30;

// All shattered subsets of the universe with size <= size_limit (all sizes
// when size_limit is nullopt, which requires universe_size within the
// guard). Shattered sets are hereditary, so the search extends smaller
// shattered sets only. Sets come out sorted, grouped by size.
std::vector<std::vector<std::uint32_t>> shattered_sets(const ConceptClass& c,
                                                       std::optional<int> size_limit = std::nullopt);

int vc_dimension(const ConceptClass& c);

// Smallest teaching set size of concepts[concept_idx] within c: the minimum
// hitting set of the symmetric differences against all other concepts.
int teaching_dim(const ConceptClass& c, std::size_t concept_idx);

int td_min(const ConceptClass& c);
int td_max(const ConceptClass& c);

struct RtdResult {
    int value = 0;
    // true when the canonical greedy plan disagreed with the brute-force
    // definition (then `value` is the brute-force answer)
    bool canonical_disagreed = false;
};

// Recursive teaching dimension via the canonical plan (repeatedly strip all
// concepts of minimum TD, track the max of those minima). On small classes
// the value is cross-checked against the subfamily-maximization definition.
RtdResult rtd_checked(const ConceptClass& c);
int rtd(const ConceptClass& c);

// Definitional RTD: max of td_min over all non-empty subfamilies. Exponential;
// guarded to |concepts| <= 20.
int rtd_brute_force(const ConceptClass& c);

struct Elimination {
    std::vector<std::uint32_t> removed;  // original concept indices, removal order
    ConceptClass remaining;
};

// Repeatedly removes every concept that has a teaching set of size <= k
// within the current class, until none qualifies.
Elimination eliminate_unique(const ConceptClass& c, int k);

DimensionReport dimension_report(const ConceptClass& c);

}  // namespace latinkit::dims
