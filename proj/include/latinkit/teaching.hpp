#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "latinkit/core.hpp"

// Teaching-set and critical-set machinery for Latin squares: verification,
// minimum teaching-set search, the class-wide minimum scs(n), and the
// quarter-size construction on the back-circulant square.

namespace latinkit::teaching {

struct TeachingReport {
    LatinSquare square;
    TripleSet set;
    bool is_teaching = false;
    bool is_critical = false;
    // a second completion of the restricted square; present iff not teaching
    std::optional<LatinSquare> witness_second_completion;
};

// s must be contained in l; teaching means from_triples(s) has exactly one
// completion (necessarily l). Decided by cap-2 exact-cover counting.
bool is_teaching_set(const TripleSet& s, const LatinSquare& l, unsigned threads = 1);

// Teaching and minimal: removing any one triple loses uniqueness.
bool is_critical_set(const TripleSet& s, const LatinSquare& l, unsigned threads = 1);

TeachingReport analyze(const TripleSet& s, const LatinSquare& l, unsigned threads = 1);

inline constexpr int kMinTeachGuard = 5;

// A minimum-size teaching set for l, lexicographically least by position
// among the winners. Searches subsets in increasing cardinality, pruned by
// the intercalate-hitting necessary condition.
std::pair<int, TripleSet> min_teaching_set(const LatinSquare& l, int max_order = kMinTeachGuard);

// Size of the smallest teaching (equivalently, smallest critical) set over
// all Latin squares of the given order. Minimized over reduced squares
// (first row and column in natural order): every square maps to a reduced
// one by an isotopy, and isotopies act bijectively on the whole class, so
// the class minimum is preserved.
int scs(int order, int max_order = kMinTeachGuard, unsigned threads = 1);

// cell(i,j) = ((i + j - 2) mod n) + 1.
LatinSquare back_circulant(int order);

inline constexpr int kQuarterVerifyGuard = 8;

// A critical set of size exactly floor(n^2/4) in back_circulant(n): two
// staircase triangles in opposite corners. The result is verified critical
// before returning (for orders within the guard); failure throws, since it
// would mean the construction is wrong.
TripleSet quarter_critical_candidate(int order, int verify_guard = kQuarterVerifyGuard,
                                     unsigned threads = 1);

// All 2x2 Latin subsquares of l as position masks (bit r*n+c, 0-based).
// Every teaching set must hit every one of them.
std::vector<std::uint64_t> intercalate_masks(const LatinSquare& l);

// All Latin squares of the given order whose first row and first column are
// 1..n in natural order; back_circulant(order) comes first.
std::vector<LatinSquare> reduced_squares(int order, unsigned threads = 1);

}  // namespace latinkit::teaching
