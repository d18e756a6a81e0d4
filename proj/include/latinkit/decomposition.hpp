#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "latinkit/core.hpp"

// Tripartite leave graphs, triangle decompositions, the minimum-degree
// decomposition hypothesis, and the executable second-completion pipeline.
//
// Parts are rows / columns / symbols, each labeled 1..n. A triangle (r,c,s)
// corresponds to the entry "cell (r,c) holds s", and K3-decompositions of
// K_{n,n,n} biject with Latin squares of order n.

namespace latinkit::decomp {

struct TripartiteGraph {
    int n = 0;
    // adjacency between parts, [i*n+j], 0-based
    std::vector<std::uint8_t> rc, rs, cs;

    static TripartiteGraph complete(int n);

    bool edge_rc(int r, int c) const { return rc[(r - 1) * n + (c - 1)]; }
    bool edge_rs(int r, int s) const { return rs[(r - 1) * n + (s - 1)]; }
    bool edge_cs(int c, int s) const { return cs[(c - 1) * n + (s - 1)]; }

    std::size_t edge_count() const;
    // total degree of a vertex (edges into both other parts); part: 0=row, 1=col, 2=sym
    int degree(int part, int label) const;

    friend bool operator==(const TripartiteGraph&, const TripartiteGraph&) = default;
};

struct K3Decomposition {
    std::vector<Triple> triangles;
};

// K_{n,n,n} minus the triangle edges of p's entries.
TripartiteGraph leave_graph(const PartialLatinSquare& p);

// Equal part sizes. Structurally true for this representation.
bool is_balanced(const TripartiteGraph& g);

// Every vertex has the same number of neighbours in each of the other two parts.
bool is_locally_balanced(const TripartiteGraph& g);

inline constexpr long double kDecompositionConstant = 101.0L / 52.0L;

struct HypothesisReport {
    long double gamma = 0;
    std::array<int, 3> effective_part_size{};  // non-isolated vertices per part
    bool balanced_after_pruning = false;
    int min_degree = 0;        // over non-isolated vertices; 0 when the graph is empty
    long double threshold = 0; // (101/52 + gamma) * effective part size
    bool satisfied = false;    // vacuously true for the empty graph
};

// Minimum-degree hypothesis check, ignoring 0-degree vertices.
HypothesisReport degree_hypothesis(const TripartiteGraph& g, long double gamma = 0.01L);

inline constexpr int kDecomposeGuard = 6;

// Exact-cover search for an edge partition into triangles; nullopt when none
// exists. The returned decomposition is re-verified edge by edge.
std::optional<K3Decomposition> k3_decompose(const TripartiteGraph& g, int max_part = kDecomposeGuard,
                                            unsigned threads = 1);

std::uint64_t count_k3_decompositions(const TripartiteGraph& g, std::uint64_t cap,
                                      int max_part = kDecomposeGuard, unsigned threads = 1);

bool is_valid_decomposition(const TripartiteGraph& g, const K3Decomposition& d);

// The second-completion pipeline: complete every heavy line (>= delta*n
// entries) from l, pad rows/columns/symbols to a common count m in
// increasing index order, plant a deviating entry (x,y,z') at the first
// uncovered cell, and try to decompose the leave graph of the result.
// Returns a Latin square different from l extending p, or nullopt when the
// planted square admits no completion. Throws when p is not contained in l,
// when the padded square is already full, or when no admissible z' exists.
std::optional<LatinSquare> second_completion(const PartialLatinSquare& p, const LatinSquare& l,
                                             long double delta, int max_part = kDecomposeGuard,
                                             unsigned threads = 1);

// Structured sidecar encoding: {"parts": n, "rc": [...], "rs": [...], "cs": [...]}
// with each matrix a list of n 0/1-rows.
std::string write_structured(const TripartiteGraph& g);
TripartiteGraph read_structured_graph(const std::string& text);

}  // namespace latinkit::decomp
