#include "latinkit/exact_cover.hpp"

#include <algorithm>
#include <cassert>
#include <thread>

#include "latinkit/core.hpp"

namespace latinkit::xc {

namespace {

// Index-based dancing links. Node 0..m-1 are column headers (column c is the
// header of constraint c); block cells follow grouped by block, so "the other
// cells of this node's block" is a contiguous range.
class Dlx {
public:
    explicit Dlx(const ExactCoverInstance& inst) : ncols_(inst.universe_size) {
        std::size_t ncells = 0;
        for (const auto& b : inst.blocks) ncells += b.size();
        up_.resize(ncols_ + ncells);
        down_.resize(ncols_ + ncells);
        col_.resize(ncols_ + ncells);
        node_block_.resize(ncols_ + ncells);
        col_size_.assign(ncols_, 0);
        for (std::uint32_t c = 0; c < ncols_; ++c) {
            up_[c] = c;
            down_[c] = c;
            col_[c] = c;
        }
        block_begin_.reserve(inst.blocks.size() + 1);
        std::uint32_t next = ncols_;
        for (std::uint32_t b = 0; b < inst.blocks.size(); ++b) {
            block_begin_.push_back(next);
            for (std::uint32_t c : inst.blocks[b]) {
                std::uint32_t node = next++;
                col_[node] = c;
                node_block_[node] = b;
                up_[node] = up_[c];
                down_[node] = c;
                down_[up_[c]] = node;
                up_[c] = node;
                ++col_size_[c];
            }
        }
        block_begin_.push_back(next);
        // active-column ring over header indices, root = ncols_
        left_.resize(ncols_ + 1);
        right_.resize(ncols_ + 1);
        for (std::uint32_t c = 0; c <= ncols_; ++c) {
            left_[c] = c == 0 ? ncols_ : c - 1;
            right_[c] = c == ncols_ ? 0 : c + 1;
        }
        if (ncols_ == 0) {
            left_[0] = 0;
            right_[0] = 0;
        }
    }

    // Covers every column of the given block (pre-selects it before search).
    void force_block(std::uint32_t b) {
        for (std::uint32_t node = block_begin_[b]; node < block_begin_[b + 1]; ++node)
            cover(col_[node]);
        chosen_.push_back(b);
    }

    // Enumerates covers; on_solution returns false to stop the search.
    void search(const std::function<bool(const std::vector<std::uint32_t>&)>& on_solution) {
        stop_ = false;
        recurse(on_solution);
    }

private:
    std::uint32_t root() const { return ncols_; }

    void cover(std::uint32_t c) {
        right_[left_[c]] = right_[c];
        left_[right_[c]] = left_[c];
        for (std::uint32_t i = down_[c]; i != c; i = down_[i]) {
            for_other_cells(i, [&](std::uint32_t j) {
                down_[up_[j]] = down_[j];
                up_[down_[j]] = up_[j];
                --col_size_[col_[j]];
            });
        }
    }

    void uncover(std::uint32_t c) {
        for (std::uint32_t i = up_[c]; i != c; i = up_[i]) {
            for_other_cells(i, [&](std::uint32_t j) {
                ++col_size_[col_[j]];
                down_[up_[j]] = j;
                up_[down_[j]] = j;
            });
        }
        right_[left_[c]] = c;
        left_[right_[c]] = c;
    }

    template <typename Fn>
    void for_other_cells(std::uint32_t node, Fn fn) {
        std::uint32_t b = node_block_[node];
        for (std::uint32_t j = block_begin_[b]; j < block_begin_[b + 1]; ++j)
            if (j != node) fn(j);
    }

    void recurse(const std::function<bool(const std::vector<std::uint32_t>&)>& on_solution) {
        if (stop_) return;
        if (right_[root()] == root()) {
            if (!on_solution(chosen_)) stop_ = true;
            return;
        }
        // fewest candidates, lowest index on ties (ring preserves index order)
        std::uint32_t best = right_[root()];
        for (std::uint32_t c = right_[best]; c != root(); c = right_[c])
            if (col_size_[c] < col_size_[best]) best = c;
        if (col_size_[best] == 0) return;
        cover(best);
        for (std::uint32_t i = down_[best]; i != best && !stop_; i = down_[i]) {
            chosen_.push_back(node_block_[i]);
            for_other_cells(i, [&](std::uint32_t j) { cover(col_[j]); });
            recurse(on_solution);
            for_other_cells_rev(i, [&](std::uint32_t j) { uncover(col_[j]); });
            chosen_.pop_back();
        }
        uncover(best);
    }

    template <typename Fn>
    void for_other_cells_rev(std::uint32_t node, Fn fn) {
        std::uint32_t b = node_block_[node];
        for (std::uint32_t j = block_begin_[b + 1]; j-- > block_begin_[b];)
            if (j != node) fn(j);
    }

    std::uint32_t ncols_;
    std::vector<std::uint32_t> up_, down_, col_, node_block_, left_, right_, col_size_;
    std::vector<std::uint32_t> block_begin_;
    std::vector<std::uint32_t> chosen_;
    bool stop_ = false;
};

void check_solution(const ExactCoverInstance& inst, const CoverSolution& sol) {
    std::vector<char> hit(inst.universe_size, 0);
    for (std::uint32_t b : sol.blocks) {
        for (std::uint32_t c : inst.blocks[b]) {
            if (hit[c]) throw error("exact cover engine produced overlapping blocks");
            hit[c] = 1;
        }
    }
    for (char h : hit)
        if (!h) throw error("exact cover engine produced an incomplete cover");
}

// Root candidates in deterministic order: the blocks of the first branching
// column. Empty when the instance is trivially solved or trivially stuck.
struct RootSplit {
    bool solved_empty = false;   // no constraints: the empty cover is the solution
    bool unsatisfiable = false;  // some constraint has no candidate block
    std::vector<std::uint32_t> candidates;
};

RootSplit root_candidates(const ExactCoverInstance& inst) {
    RootSplit rs;
    if (inst.universe_size == 0) {
        rs.solved_empty = true;
        return rs;
    }
    std::vector<std::vector<std::uint32_t>> by_col(inst.universe_size);
    for (std::uint32_t b = 0; b < inst.blocks.size(); ++b)
        for (std::uint32_t c : inst.blocks[b]) by_col[c].push_back(b);
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < inst.universe_size; ++c)
        if (by_col[c].size() < by_col[best].size()) best = c;
    if (by_col[best].empty()) {
        rs.unsatisfiable = true;
        return rs;
    }
    rs.candidates = by_col[best];
    return rs;
}

std::vector<CoverSolution> solve_subtree(const ExactCoverInstance& inst, std::uint32_t forced,
                                         std::uint64_t cap) {
    std::vector<CoverSolution> out;
    if (cap == 0) return out;
    Dlx dlx(inst);
    dlx.force_block(forced);
    dlx.search([&](const std::vector<std::uint32_t>& chosen) {
        CoverSolution s{chosen};
        std::sort(s.blocks.begin(), s.blocks.end());
        out.push_back(std::move(s));
        return out.size() < cap;
    });
    return out;
}

}  // namespace

void validate(const ExactCoverInstance& inst) {
    for (std::size_t b = 0; b < inst.blocks.size(); ++b) {
        const auto& cs = inst.blocks[b];
        if (cs.empty()) throw error("block " + std::to_string(b) + " is empty");
        std::vector<std::uint32_t> sorted(cs);
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] >= inst.universe_size)
                throw error("block " + std::to_string(b) + " references constraint " +
                            std::to_string(sorted[i]) + " outside the universe");
            if (i > 0 && sorted[i] == sorted[i - 1])
                throw error("block " + std::to_string(b) + " repeats a constraint");
        }
    }
}

std::vector<CoverSolution> solve(const ExactCoverInstance& inst, std::uint64_t cap, unsigned threads) {
    validate(inst);
    std::vector<CoverSolution> out;
    if (cap == 0) return out;

    if (threads <= 1) {
        Dlx dlx(inst);
        dlx.search([&](const std::vector<std::uint32_t>& chosen) {
            CoverSolution s{chosen};
            std::sort(s.blocks.begin(), s.blocks.end());
            out.push_back(std::move(s));
            return out.size() < cap;
        });
    } else {
        RootSplit rs = root_candidates(inst);
        if (rs.solved_empty) {
            out.push_back(CoverSolution{});
        } else if (!rs.unsatisfiable) {
            std::vector<std::vector<CoverSolution>> partial(rs.candidates.size());
            std::size_t nworkers = std::min<std::size_t>(threads, rs.candidates.size());
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < nworkers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t i = w; i < rs.candidates.size(); i += nworkers)
                        partial[i] = solve_subtree(inst, rs.candidates[i], cap);
                });
            }
            for (auto& t : pool) t.join();
            for (auto& part : partial) {
                for (auto& s : part) {
                    if (out.size() == cap) break;
                    out.push_back(std::move(s));
                }
            }
        }
    }
    for (const CoverSolution& s : out) check_solution(inst, s);
    return out;
}

std::uint64_t count(const ExactCoverInstance& inst, std::uint64_t cap, unsigned threads) {
    validate(inst);
    if (cap == 0) return 0;
    if (threads <= 1) {
        std::uint64_t n = 0;
        Dlx dlx(inst);
        dlx.search([&](const std::vector<std::uint32_t>&) { return ++n < cap; });
        return n;
    }
    RootSplit rs = root_candidates(inst);
    if (rs.solved_empty) return 1;
    if (rs.unsatisfiable) return 0;
    std::vector<std::uint64_t> partial(rs.candidates.size(), 0);
    std::size_t nworkers = std::min<std::size_t>(threads, rs.candidates.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nworkers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < rs.candidates.size(); i += nworkers) {
                std::uint64_t n = 0;
                Dlx dlx(inst);
                dlx.force_block(rs.candidates[i]);
                dlx.search([&](const std::vector<std::uint32_t>&) { return ++n < cap; });
                partial[i] = n;
            }
        });
    }
    for (auto& t : pool) t.join();
    std::uint64_t total = 0;
    for (std::uint64_t n : partial) {
        total += n;
        if (total >= cap) return cap;
    }
    return total;
}

}  // namespace latinkit::xc
