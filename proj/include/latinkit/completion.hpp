#pragma once

#include <cstdint>
#include <vector>

#include "latinkit/core.hpp"
#include "latinkit/exact_cover.hpp"

// Completion semantics for partial Latin squares via exact cover. Uniqueness
// is always decided by cap-2 counting, never by propagation.

namespace latinkit::completion {

// Exact-cover encoding of the completions of p: one block per candidate
// triple, one constraint per unsatisfied cell / row-symbol / column-symbol
// requirement. Exact covers biject with completions.
struct Encoding {
    xc::ExactCoverInstance instance;
    std::vector<Triple> block_triple;  // block id -> candidate triple
};

Encoding encode(const PartialLatinSquare& p);

// All completions of p (at most cap), in deterministic search order.
std::vector<LatinSquare> completions(const PartialLatinSquare& p, std::uint64_t cap = xc::kNoCap,
                                     unsigned threads = 1);

std::uint64_t count_completions(const PartialLatinSquare& p, std::uint64_t cap = xc::kNoCap,
                                unsigned threads = 1);

bool is_uniquely_completable(const PartialLatinSquare& p, unsigned threads = 1);

// All Latin squares of the given order, deterministic order.
std::vector<LatinSquare> latin_squares(int order, unsigned threads = 1);
std::uint64_t count_latin(int order, unsigned threads = 1);

inline constexpr int kEnumeratePartialGuard = 4;

// Exact |T_{n,k}|: the number of partial Latin squares of order n with
// exactly k filled cells. Counts for all k in one sweep.
std::vector<std::uint64_t> enumerate_partial_profile(int order, int max_order = kEnumeratePartialGuard);

std::uint64_t enumerate_partial(int order, int size, int max_order = kEnumeratePartialGuard);

}  // namespace latinkit::completion
