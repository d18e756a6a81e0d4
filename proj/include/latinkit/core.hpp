#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Domain types for (partial) Latin squares, grid/triple conversions and the
// two file formats (whitespace grid, structured JSON sidecar).
//
// All indices and symbols are 1-based at the API surface; 0 marks an empty
// cell in the raw grid vectors. Types are immutable after construction and
// validated on every construction path.

namespace latinkit {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parse/validation failure tied to a cell. row/col are 1-based; 0 = not cell-specific.
class grid_error : public error {
public:
    grid_error(const std::string& msg, int row, int col)
        : error(msg), row(row), col(col) {}
    int row = 0;
    int col = 0;
};

// A size/order limit was exceeded (see the per-operation guards).
class guard_error : public error {
public:
    using error::error;
};

struct Triple {
    int row = 0;
    int col = 0;
    int sym = 0;

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

class PartialLatinSquare {
public:
    // cells is row-major, 0 = empty, validated against the at-most-once
    // row/column rule. Throws grid_error at the offending cell.
    static PartialLatinSquare from_cells(int order, std::vector<int> cells);

    static PartialLatinSquare empty(int order);

    int order() const { return order_; }
    // 1-based coordinates; returns 0 for an empty cell.
    int at(int row, int col) const { return cells_[idx(row, col)]; }
    bool is_filled(int row, int col) const { return at(row, col) != 0; }
    int size() const { return size_; }
    bool is_full() const { return size_ == order_ * order_; }
    const std::vector<int>& cells() const { return cells_; }

    friend bool operator==(const PartialLatinSquare&, const PartialLatinSquare&) = default;

private:
    PartialLatinSquare(int order, std::vector<int> cells, int size)
        : order_(order), cells_(std::move(cells)), size_(size) {}
    int idx(int row, int col) const { return (row - 1) * order_ + (col - 1); }

    int order_ = 0;
    std::vector<int> cells_;
    int size_ = 0;
};

class LatinSquare {
public:
    // Full grid, every row and column a permutation of 1..n.
    static LatinSquare from_cells(int order, std::vector<int> cells);
    static LatinSquare from_partial(const PartialLatinSquare& p);

    int order() const { return grid_.order(); }
    int at(int row, int col) const { return grid_.at(row, col); }
    const std::vector<int>& cells() const { return grid_.cells(); }
    const PartialLatinSquare& as_partial() const { return grid_; }

    friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

private:
    explicit LatinSquare(PartialLatinSquare grid) : grid_(std::move(grid)) {}
    PartialLatinSquare grid_;
};

class TripleSet {
public:
    // Triples are stored sorted row-major; duplicates and Latin conflicts rejected.
    static TripleSet from_triples(int order, std::vector<Triple> triples);

    int order() const { return order_; }
    const std::vector<Triple>& triples() const { return triples_; }
    int size() const { return static_cast<int>(triples_.size()); }
    bool contains(const Triple& t) const;

    friend bool operator==(const TripleSet&, const TripleSet&) = default;

private:
    TripleSet(int order, std::vector<Triple> triples)
        : order_(order), triples_(std::move(triples)) {}
    int order_ = 0;
    std::vector<Triple> triples_;
};

// Grid format: one line per row, whitespace-separated tokens, "." for an
// empty cell ("0" accepted on input as an alias, never emitted). '/' is
// accepted as an inline row separator. Order is inferred from the row count;
// ragged rows are an error.
PartialLatinSquare parse_grid(const std::string& text);
std::string render_grid(const PartialLatinSquare& p);

TripleSet to_triples(const PartialLatinSquare& p);
PartialLatinSquare from_triples(const TripleSet& t);

TripleSet to_triples(const LatinSquare& l);

// Positions are 1-based (row, col) pairs; cells at the positions carry l's
// symbols, all others are empty.
PartialLatinSquare restrict(const LatinSquare& l, const std::vector<std::pair<int, int>>& positions);

// Structured sidecar format: {"order": n, "triples": [[r,c,s], ...]} with
// triples sorted row-major. write_structured emits the canonical compact
// encoding; write(read(write(p))) == write(p) byte for byte.
std::string write_structured(const PartialLatinSquare& p);
PartialLatinSquare read_structured(const std::string& text);

// True iff cells (row-major, 0 = empty) satisfy the at-most-once rule with
// symbols in 1..order.
bool is_valid_grid(int order, const std::vector<int>& cells);

}  // namespace latinkit
