#include "latinkit/core.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "json.hpp"

namespace latinkit {

namespace {

std::string cell_str(int row, int col) {
    return "(" + std::to_string(row) + "," + std::to_string(col) + ")";
}

// Returns the first violating cell or (0,0). kind: 1 = out of range, 2 = row dup, 3 = col dup.
struct GridProblem {
    int kind = 0;
    int row = 0;
    int col = 0;
};

GridProblem find_grid_problem(int order, const std::vector<int>& cells) {
    std::vector<std::uint64_t> row_seen(order + 1, 0), col_seen(order + 1, 0);
    const bool wide = order > 64;
    std::vector<std::vector<char>> row_seen_w, col_seen_w;
    if (wide) {
        row_seen_w.assign(order + 1, std::vector<char>(order + 1, 0));
        col_seen_w.assign(order + 1, std::vector<char>(order + 1, 0));
    }
    for (int r = 1; r <= order; ++r) {
        for (int c = 1; c <= order; ++c) {
            int s = cells[(r - 1) * order + (c - 1)];
            if (s == 0) continue;
            if (s < 1 || s > order) return {1, r, c};
            if (!wide) {
                std::uint64_t bit = 1ull << (s - 1);
                if (row_seen[r] & bit) return {2, r, c};
                if (col_seen[c] & bit) return {3, r, c};
                row_seen[r] |= bit;
                col_seen[c] |= bit;
            } else {
                if (row_seen_w[r][s]) return {2, r, c};
                if (col_seen_w[c][s]) return {3, r, c};
                row_seen_w[r][s] = 1;
                col_seen_w[c][s] = 1;
            }
        }
    }
    return {};
}

void check_grid(int order, const std::vector<int>& cells) {
    if (order < 1) throw grid_error("order must be at least 1", 0, 0);
    if (cells.size() != static_cast<std::size_t>(order) * order)
        throw grid_error("cell array has wrong length for order " + std::to_string(order), 0, 0);
    GridProblem p = find_grid_problem(order, cells);
    switch (p.kind) {
        case 0: return;
        case 1:
            throw grid_error("symbol out of range 1.." + std::to_string(order) + " at " + cell_str(p.row, p.col),
                             p.row, p.col);
        case 2:
            throw grid_error("Latin violation: duplicate symbol in row at " + cell_str(p.row, p.col), p.row, p.col);
        default:
            throw grid_error("Latin violation: duplicate symbol in column at " + cell_str(p.row, p.col), p.row,
                             p.col);
    }
}

}  // namespace

bool is_valid_grid(int order, const std::vector<int>& cells) {
    if (order < 1 || cells.size() != static_cast<std::size_t>(order) * order) return false;
    for (int v : cells)
        if (v < 0 || v > order) return false;
    return find_grid_problem(order, cells).kind == 0;
}

PartialLatinSquare PartialLatinSquare::from_cells(int order, std::vector<int> cells) {
    check_grid(order, cells);
    int size = 0;
    for (int v : cells) size += v != 0;
    return PartialLatinSquare(order, std::move(cells), size);
}

PartialLatinSquare PartialLatinSquare::empty(int order) {
    if (order < 1) throw grid_error("order must be at least 1", 0, 0);
    return PartialLatinSquare(order, std::vector<int>(static_cast<std::size_t>(order) * order, 0), 0);
}

LatinSquare LatinSquare::from_cells(int order, std::vector<int> cells) {
    return from_partial(PartialLatinSquare::from_cells(order, std::move(cells)));
}

LatinSquare LatinSquare::from_partial(const PartialLatinSquare& p) {
    if (!p.is_full()) {
        for (int r = 1; r <= p.order(); ++r)
            for (int c = 1; c <= p.order(); ++c)
                if (!p.is_filled(r, c))
                    throw grid_error("square is not fully filled, first empty cell at " + cell_str(r, c), r, c);
    }
    return LatinSquare(p);
}

TripleSet TripleSet::from_triples(int order, std::vector<Triple> triples) {
    if (order < 1) throw grid_error("order must be at least 1", 0, 0);
    std::sort(triples.begin(), triples.end());
    std::vector<int> cells(static_cast<std::size_t>(order) * order, 0);
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const Triple& t = triples[i];
        if (t.row < 1 || t.row > order || t.col < 1 || t.col > order)
            throw grid_error("triple position out of range at " + cell_str(t.row, t.col), t.row, t.col);
        if (t.sym < 1 || t.sym > order)
            throw grid_error("triple symbol out of range at " + cell_str(t.row, t.col), t.row, t.col);
        if (i > 0 && triples[i - 1].row == t.row && triples[i - 1].col == t.col)
            throw grid_error("two triples share cell " + cell_str(t.row, t.col), t.row, t.col);
        cells[(t.row - 1) * order + (t.col - 1)] = t.sym;
    }
    check_grid(order, cells);  // catches shared (row,sym) / (col,sym)
    return TripleSet(order, std::move(triples));
}

bool TripleSet::contains(const Triple& t) const {
    return std::binary_search(triples_.begin(), triples_.end(), t);
}

PartialLatinSquare parse_grid(const std::string& text) {
    // '/' doubles as a row separator so squares can be written inline.
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> current;
    std::string token;
    auto flush_token = [&] {
        if (!token.empty()) {
            current.push_back(token);
            token.clear();
        }
    };
    auto flush_row = [&] {
        flush_token();
        if (!current.empty()) {
            rows.push_back(current);
            current.clear();
        }
    };
    for (char ch : text) {
        if (ch == '\n' || ch == '/')
            flush_row();
        else if (ch == ' ' || ch == '\t' || ch == '\r')
            flush_token();
        else
            token.push_back(ch);
    }
    flush_row();

    if (rows.empty()) throw grid_error("empty grid", 0, 0);
    const int order = static_cast<int>(rows.size());
    std::vector<int> cells(static_cast<std::size_t>(order) * order, 0);
    for (int r = 1; r <= order; ++r) {
        const auto& row = rows[r - 1];
        if (static_cast<int>(row.size()) != order)
            throw grid_error("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                 " entries, expected " + std::to_string(order),
                             r, 0);
        for (int c = 1; c <= order; ++c) {
            const std::string& tok = row[c - 1];
            if (tok == "." || tok == "0") continue;
            int value = 0;
            try {
                std::size_t pos = 0;
                value = std::stoi(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw grid_error("bad token '" + tok + "' at " + cell_str(r, c), r, c);
            }
            cells[(r - 1) * order + (c - 1)] = value;
        }
    }
    return PartialLatinSquare::from_cells(order, std::move(cells));
}

std::string render_grid(const PartialLatinSquare& p) {
    std::string out;
    for (int r = 1; r <= p.order(); ++r) {
        if (r > 1) out.push_back('\n');
        for (int c = 1; c <= p.order(); ++c) {
            if (c > 1) out.push_back(' ');
            int s = p.at(r, c);
            if (s == 0)
                out.push_back('.');
            else
                out += std::to_string(s);
        }
    }
    return out;
}

TripleSet to_triples(const PartialLatinSquare& p) {
    std::vector<Triple> ts;
    ts.reserve(p.size());
    for (int r = 1; r <= p.order(); ++r)
        for (int c = 1; c <= p.order(); ++c)
            if (int s = p.at(r, c); s != 0) ts.push_back({r, c, s});
    return TripleSet::from_triples(p.order(), std::move(ts));
}

TripleSet to_triples(const LatinSquare& l) { return to_triples(l.as_partial()); }

PartialLatinSquare from_triples(const TripleSet& t) {
    std::vector<int> cells(static_cast<std::size_t>(t.order()) * t.order(), 0);
    for (const Triple& tr : t.triples()) cells[(tr.row - 1) * t.order() + (tr.col - 1)] = tr.sym;
    return PartialLatinSquare::from_cells(t.order(), std::move(cells));
}

PartialLatinSquare restrict(const LatinSquare& l, const std::vector<std::pair<int, int>>& positions) {
    std::vector<int> cells(static_cast<std::size_t>(l.order()) * l.order(), 0);
    for (auto [r, c] : positions) {
        if (r < 1 || r > l.order() || c < 1 || c > l.order())
            throw grid_error("position out of range at " + cell_str(r, c), r, c);
        cells[(r - 1) * l.order() + (c - 1)] = l.at(r, c);
    }
    return PartialLatinSquare::from_cells(l.order(), std::move(cells));
}

std::string write_structured(const PartialLatinSquare& p) {
    nlohmann::json j;
    j["order"] = p.order();
    auto triples = nlohmann::json::array();
    const TripleSet ts = to_triples(p);
    for (const Triple& t : ts.triples()) triples.push_back({t.row, t.col, t.sym});
    j["triples"] = std::move(triples);
    return j.dump();
}

PartialLatinSquare read_structured(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw grid_error(std::string("bad structured input: ") + e.what(), 0, 0);
    }
    if (!j.is_object() || !j.contains("order") || !j.contains("triples"))
        throw grid_error("structured input must be an object with 'order' and 'triples'", 0, 0);
    int order = 0;
    std::vector<Triple> ts;
    try {
        order = j.at("order").get<int>();
        for (const auto& item : j.at("triples")) {
            if (!item.is_array() || item.size() != 3)
                throw grid_error("each triple must be a [row,col,sym] array", 0, 0);
            ts.push_back({item[0].get<int>(), item[1].get<int>(), item[2].get<int>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw grid_error(std::string("bad structured input: ") + e.what(), 0, 0);
    }
    return from_triples(TripleSet::from_triples(order, std::move(ts)));
}

}  // namespace latinkit
