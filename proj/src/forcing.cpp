#include "latinkit/forcing.hpp"

#include <cassert>

namespace latinkit::forcing {

namespace {

// Symbol-presence tables per row and column. Bitmask fast path for n <= 62,
// plain presence matrix beyond.
struct Masks {
    int n;
    bool wide;
    std::vector<std::uint64_t> row, col;            // bit s = symbol s present
    std::vector<std::vector<char>> row_w, col_w;    // [line][symbol]
    std::vector<int> row_cnt, col_cnt;              // distinct symbols per line (wide path)

    explicit Masks(const PartialLatinSquare& p) : n(p.order()), wide(n > 62) {
        if (!wide) {
            row.assign(n + 1, 0);
            col.assign(n + 1, 0);
        } else {
            row_w.assign(n + 1, std::vector<char>(n + 1, 0));
            col_w.assign(n + 1, std::vector<char>(n + 1, 0));
            row_cnt.assign(n + 1, 0);
            col_cnt.assign(n + 1, 0);
        }
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= n; ++c)
                if (int s = p.at(r, c); s != 0) add(r, c, s);
    }

    void add(int r, int c, int s) {
        if (!wide) {
            row[r] |= 1ull << s;
            col[c] |= 1ull << s;
        } else {
            if (!row_w[r][s]) ++row_cnt[r];
            if (!col_w[c][s]) ++col_cnt[c];
            row_w[r][s] = 1;
            col_w[c][s] = 1;
        }
    }

    // 0 when cell (r,c) is not forced, else the unique absent symbol of row r union column c.
    int forced(int r, int c) const {
        if (!wide) {
            std::uint64_t all = (1ull << (n + 1)) - 2;  // bits 1..n
            std::uint64_t missing = all & ~(row[r] | col[c]);
            if (missing == 0 || (missing & (missing - 1)) != 0) return 0;
            int s = 1;
            while (!(missing >> s & 1)) ++s;
            return s;
        }
        int found = 0;
        for (int s = 1; s <= n; ++s) {
            if (row_w[r][s] || col_w[c][s]) continue;
            if (found) return 0;
            found = s;
        }
        return found;
    }
};

}  // namespace

std::optional<int> forced_symbol(const PartialLatinSquare& p, int row, int col) {
    if (row < 1 || row > p.order() || col < 1 || col > p.order())
        throw grid_error("cell out of range", row, col);
    if (p.is_filled(row, col))
        throw grid_error("cell (" + std::to_string(row) + "," + std::to_string(col) + ") is already filled",
                         row, col);
    Masks m(p);
    int s = m.forced(row, col);
    if (s == 0) return std::nullopt;
    return s;
}

PartialLatinSquare propagate(const PartialLatinSquare& p) {
    const int n = p.order();
    std::vector<int> cells = p.cells();
    Masks m(p);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= n; ++c) {
                if (cells[(r - 1) * n + (c - 1)] != 0) continue;
                int s = m.forced(r, c);
                if (s == 0) continue;
                cells[(r - 1) * n + (c - 1)] = s;
                m.add(r, c, s);
                changed = true;
            }
    }
    return PartialLatinSquare::from_cells(n, std::move(cells));
}

bool is_strong_teaching_set(const TripleSet& s, const LatinSquare& l) {
    if (s.order() != l.order()) throw error("set and square have different orders");
    for (const Triple& t : s.triples())
        if (l.at(t.row, t.col) != t.sym)
            throw grid_error("set is not contained in the square at (" + std::to_string(t.row) + "," +
                                 std::to_string(t.col) + ")",
                             t.row, t.col);
    return propagate(from_triples(s)) == l.as_partial();
}

}  // namespace latinkit::forcing
