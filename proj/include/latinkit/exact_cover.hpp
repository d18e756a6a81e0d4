#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

// Generic exact-cover search engine (dancing links / Algorithm X).
//
// Deterministic: the branching constraint is always one with the fewest
// remaining candidate blocks, ties broken by lowest constraint index, and
// candidate blocks are tried in block-id order. Solutions therefore come out
// in a fixed order, and with threads > 1 the result list and counts are
// identical to the sequential run (the root candidates are split across
// workers and merged back in order).

namespace latinkit::xc {

inline constexpr std::uint64_t kNoCap = std::numeric_limits<std::uint64_t>::max();

struct ExactCoverInstance {
    // Constraints are 0..universe_size-1. Block ids are positions in `blocks`.
    std::uint32_t universe_size = 0;
    std::vector<std::vector<std::uint32_t>> blocks;
};

struct CoverSolution {
    std::vector<std::uint32_t> blocks;  // sorted block ids

    friend bool operator==(const CoverSolution&, const CoverSolution&) = default;
};

// Throws latinkit::error if a block is empty, out of range, or repeats a constraint.
void validate(const ExactCoverInstance& inst);

// All exact covers, at most cap of them, in deterministic search order.
// Every returned solution is re-verified (pairwise disjoint, union = universe).
std::vector<CoverSolution> solve(const ExactCoverInstance& inst, std::uint64_t cap = kNoCap,
                                 unsigned threads = 1);

// Number of exact covers, saturating at cap; never searches past cap.
std::uint64_t count(const ExactCoverInstance& inst, std::uint64_t cap = kNoCap, unsigned threads = 1);

}  // namespace latinkit::xc
