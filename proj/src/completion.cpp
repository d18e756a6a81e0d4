#include "latinkit/completion.hpp"

#include <cassert>

namespace latinkit::completion {

Encoding encode(const PartialLatinSquare& p) {
    const int n = p.order();
    if (n > 62) throw guard_error("completion encoding supports orders up to 62");
    // masks of used symbols per row / column
    std::vector<std::uint64_t> row_used(n + 1, 0), col_used(n + 1, 0);
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c)
            if (int s = p.at(r, c); s != 0) {
                row_used[r] |= 1ull << s;
                col_used[c] |= 1ull << s;
            }

    // constraint ids, compressed to the unsatisfied ones
    const std::uint32_t kUnused = 0xffffffffu;
    std::vector<std::uint32_t> cell_id(n * n, kUnused), rowsym_id(n * n, kUnused), colsym_id(n * n, kUnused);
    std::uint32_t next = 0;
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c)
            if (!p.is_filled(r, c)) cell_id[(r - 1) * n + (c - 1)] = next++;
    for (int r = 1; r <= n; ++r)
        for (int s = 1; s <= n; ++s)
            if (!(row_used[r] >> s & 1)) rowsym_id[(r - 1) * n + (s - 1)] = next++;
    for (int c = 1; c <= n; ++c)
        for (int s = 1; s <= n; ++s)
            if (!(col_used[c] >> s & 1)) colsym_id[(c - 1) * n + (s - 1)] = next++;

    Encoding enc;
    enc.instance.universe_size = next;
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c) {
            if (p.is_filled(r, c)) continue;
            for (int s = 1; s <= n; ++s) {
                if (row_used[r] >> s & 1) continue;
                if (col_used[c] >> s & 1) continue;
                enc.instance.blocks.push_back({cell_id[(r - 1) * n + (c - 1)],
                                               rowsym_id[(r - 1) * n + (s - 1)],
                                               colsym_id[(c - 1) * n + (s - 1)]});
                enc.block_triple.push_back({r, c, s});
            }
        }
    return enc;
}

std::vector<LatinSquare> completions(const PartialLatinSquare& p, std::uint64_t cap, unsigned threads) {
    Encoding enc = encode(p);
    std::vector<xc::CoverSolution> covers = xc::solve(enc.instance, cap, threads);
    std::vector<LatinSquare> out;
    out.reserve(covers.size());
    const int n = p.order();
    for (const xc::CoverSolution& sol : covers) {
        std::vector<int> cells = p.cells();
        for (std::uint32_t b : sol.blocks) {
            const Triple& t = enc.block_triple[b];
            cells[(t.row - 1) * n + (t.col - 1)] = t.sym;
        }
        out.push_back(LatinSquare::from_cells(n, std::move(cells)));
    }
    return out;
}

std::uint64_t count_completions(const PartialLatinSquare& p, std::uint64_t cap, unsigned threads) {
    return xc::count(encode(p).instance, cap, threads);
}

bool is_uniquely_completable(const PartialLatinSquare& p, unsigned threads) {
    return count_completions(p, 2, threads) == 1;
}

std::vector<LatinSquare> latin_squares(int order, unsigned threads) {
    return completions(PartialLatinSquare::empty(order), xc::kNoCap, threads);
}

std::uint64_t count_latin(int order, unsigned threads) {
    return count_completions(PartialLatinSquare::empty(order), xc::kNoCap, threads);
}

namespace {

// DFS over cells in row-major order; every node of the tree is a distinct
// partial Latin square, so counting nodes by filled-cell count gives |T_{n,k}|.
// Branches with more than max_fill symbols are never explored.
void count_partials(int n, int cell, int filled, int max_fill, std::vector<std::uint32_t>& row_used,
                    std::vector<std::uint32_t>& col_used, std::vector<std::uint64_t>& counts) {
    if (cell == n * n) {
        ++counts[filled];
        return;
    }
    int r = cell / n, c = cell % n;
    count_partials(n, cell + 1, filled, max_fill, row_used, col_used, counts);  // leave empty
    if (filled == max_fill) return;
    std::uint32_t avail = ~(row_used[r] | col_used[c]) & ((1u << n) - 1);
    while (avail) {
        std::uint32_t bit = avail & -avail;
        avail ^= bit;
        row_used[r] |= bit;
        col_used[c] |= bit;
        count_partials(n, cell + 1, filled + 1, max_fill, row_used, col_used, counts);
        row_used[r] ^= bit;
        col_used[c] ^= bit;
    }
}

std::vector<std::uint64_t> profile_up_to(int order, int max_fill) {
    std::vector<std::uint64_t> counts(order * order + 1, 0);
    std::vector<std::uint32_t> row_used(order, 0), col_used(order, 0);
    count_partials(order, 0, 0, max_fill, row_used, col_used, counts);
    return counts;
}

}  // namespace

std::vector<std::uint64_t> enumerate_partial_profile(int order, int max_order) {
    if (order < 1) throw error("order must be at least 1");
    if (order > max_order)
        throw guard_error("partial-square enumeration guarded at order " + std::to_string(max_order) +
                          " (got " + std::to_string(order) + "); raise the guard explicitly to override");
    return profile_up_to(order, order * order);
}

std::uint64_t enumerate_partial(int order, int size, int max_order) {
    if (order < 1) throw error("order must be at least 1");
    if (size < 0 || size > order * order)
        throw error("size must be between 0 and order^2");
    if (order > max_order)
        throw guard_error("partial-square enumeration guarded at order " + std::to_string(max_order) +
                          " (got " + std::to_string(order) + "); raise the guard explicitly to override");
    // bounding the sweep at the requested size keeps small-k queries cheap
    return profile_up_to(order, size)[size];
}

}  // namespace latinkit::completion
