#pragma once

#include <optional>

#include "latinkit/core.hpp"

// The row-union-column forcing rule and strong teaching sets.
//
// The rule is deliberately exactly this weak: an empty cell (i,j) is forced
// to k iff the symbols already present in row i together with those in
// column j are {1..n} \ {k}. Stronger propagators (symbol placement, pair
// inference) would classify more sets as strong, so they are out of scope.

namespace latinkit::forcing {

// Forced value of the empty cell (i,j), or nullopt. Throws if the cell is filled.
std::optional<int> forced_symbol(const PartialLatinSquare& p, int row, int col);

// Least fixpoint of the forcing rule. Placements are always consistent (the
// forced symbol is absent from its row and column by definition), so the
// result is a valid partial square extending p.
PartialLatinSquare propagate(const PartialLatinSquare& p);

// True iff iterating the rule from s alone reconstructs all of l.
// Throws if s is not contained in l.
bool is_strong_teaching_set(const TripleSet& s, const LatinSquare& l);

}  // namespace latinkit::forcing
