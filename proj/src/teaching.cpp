#include "latinkit/teaching.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <thread>

#include "latinkit/completion.hpp"

namespace latinkit::teaching {

namespace {

void check_contained(const TripleSet& s, const LatinSquare& l) {
    if (s.order() != l.order()) throw error("set and square have different orders");
    for (const Triple& t : s.triples())
        if (l.at(t.row, t.col) != t.sym)
            throw grid_error("set is not contained in the square at (" + std::to_string(t.row) + "," +
                                 std::to_string(t.col) + ")",
                             t.row, t.col);
}

TripleSet positions_to_set(const LatinSquare& l, const std::vector<int>& positions) {
    const int n = l.order();
    std::vector<Triple> ts;
    ts.reserve(positions.size());
    for (int p : positions) ts.push_back({p / n + 1, p % n + 1, l.at(p / n + 1, p % n + 1)});
    return TripleSet::from_triples(n, std::move(ts));
}

bool positions_teach(const LatinSquare& l, const std::vector<int>& positions, unsigned threads) {
    const int n = l.order();
    std::vector<std::pair<int, int>> pos;
    pos.reserve(positions.size());
    for (int p : positions) pos.emplace_back(p / n + 1, p % n + 1);
    return completion::is_uniquely_completable(restrict(l, pos), threads);
}

// Lexicographic k-subset enumeration over 0..m-1 with a per-subset predicate;
// returns the first subset accepted, i.e. the lexicographically least winner.
template <typename Pred>
std::optional<std::vector<int>> first_subset(int m, int k, Pred&& pred) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k > m) return std::nullopt;
    while (true) {
        if (pred(idx)) return idx;
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) return std::nullopt;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool hits_all(const std::vector<int>& positions, const std::vector<std::uint64_t>& masks) {
    std::uint64_t chosen = 0;
    for (int p : positions) chosen |= 1ull << p;
    for (std::uint64_t m : masks)
        if (!(m & chosen)) return false;
    return true;
}

// Smallest teaching set of size <= kmax, or nullopt.
std::optional<std::pair<int, std::vector<int>>> min_teaching_capped(const LatinSquare& l, int kmax) {
    const int n = l.order();
    const int m = n * n;
    const std::vector<std::uint64_t> masks = n <= 8 ? intercalate_masks(l) : std::vector<std::uint64_t>{};
    for (int k = 0; k <= std::min(kmax, m); ++k) {
        auto found = first_subset(m, k, [&](const std::vector<int>& idx) {
            if (!masks.empty() && !hits_all(idx, masks)) return false;
            return positions_teach(l, idx, 1);
        });
        if (found) return std::make_pair(k, *found);
    }
    return std::nullopt;
}

}  // namespace

bool is_teaching_set(const TripleSet& s, const LatinSquare& l, unsigned threads) {
    check_contained(s, l);
    return completion::is_uniquely_completable(from_triples(s), threads);
}

bool is_critical_set(const TripleSet& s, const LatinSquare& l, unsigned threads) {
    if (!is_teaching_set(s, l, threads)) return false;
    for (std::size_t drop = 0; drop < s.triples().size(); ++drop) {
        std::vector<Triple> rest;
        rest.reserve(s.triples().size() - 1);
        for (std::size_t i = 0; i < s.triples().size(); ++i)
            if (i != drop) rest.push_back(s.triples()[i]);
        if (is_teaching_set(TripleSet::from_triples(s.order(), std::move(rest)), l, threads)) return false;
    }
    return true;
}

TeachingReport analyze(const TripleSet& s, const LatinSquare& l, unsigned threads) {
    check_contained(s, l);
    TeachingReport rep{l, s, false, false, std::nullopt};
    std::vector<LatinSquare> two = completion::completions(from_triples(s), 2, threads);
    assert(!two.empty());  // l itself always completes s
    rep.is_teaching = two.size() == 1;
    if (!rep.is_teaching) {
        rep.witness_second_completion = two[0] == l ? two[1] : two[0];
    } else {
        rep.is_critical = is_critical_set(s, l, threads);
    }
    return rep;
}

std::pair<int, TripleSet> min_teaching_set(const LatinSquare& l, int max_order) {
    if (l.order() > max_order)
        throw guard_error("minimum teaching-set search guarded at order " + std::to_string(max_order) +
                          " (got " + std::to_string(l.order()) + ")");
    auto found = min_teaching_capped(l, l.order() * l.order());
    assert(found);  // the full square always teaches itself
    return {found->first, positions_to_set(l, found->second)};
}

LatinSquare back_circulant(int order) {
    if (order < 1) throw error("order must be at least 1");
    std::vector<int> cells(static_cast<std::size_t>(order) * order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) cells[i * order + j] = (i + j) % order + 1;
    return LatinSquare::from_cells(order, std::move(cells));
}

std::vector<std::uint64_t> intercalate_masks(const LatinSquare& l) {
    const int n = l.order();
    if (n > 8) throw guard_error("intercalate position masks need order <= 8");
    std::vector<std::uint64_t> masks;
    for (int r1 = 1; r1 <= n; ++r1)
        for (int r2 = r1 + 1; r2 <= n; ++r2)
            for (int c1 = 1; c1 <= n; ++c1)
                for (int c2 = c1 + 1; c2 <= n; ++c2)
                    if (l.at(r1, c1) == l.at(r2, c2) && l.at(r1, c2) == l.at(r2, c1)) {
                        std::uint64_t m = 0;
                        m |= 1ull << ((r1 - 1) * n + (c1 - 1));
                        m |= 1ull << ((r1 - 1) * n + (c2 - 1));
                        m |= 1ull << ((r2 - 1) * n + (c1 - 1));
                        m |= 1ull << ((r2 - 1) * n + (c2 - 1));
                        masks.push_back(m);
                    }
    return masks;
}

std::vector<LatinSquare> reduced_squares(int order, unsigned threads) {
    std::vector<int> cells(static_cast<std::size_t>(order) * order, 0);
    for (int i = 0; i < order; ++i) {
        cells[i] = i + 1;              // first row
        cells[i * order] = i + 1;      // first column
    }
    std::vector<LatinSquare> all =
        completion::completions(PartialLatinSquare::from_cells(order, std::move(cells)), xc::kNoCap, threads);
    LatinSquare bc = back_circulant(order);
    std::vector<LatinSquare> out;
    out.reserve(all.size());
    out.push_back(bc);
    for (const LatinSquare& l : all)
        if (!(l == bc)) out.push_back(l);
    return out;
}

int scs(int order, int max_order, unsigned threads) {
    if (order > max_order)
        throw guard_error("smallest-critical-set search guarded at order " + std::to_string(max_order) +
                          " (got " + std::to_string(order) + ")");
    // n <= 4: plain exhaustion over every square. Beyond that, reduced squares
    // suffice: isotopies act bijectively on the class and preserve teaching
    // sets, so the class minimum is attained on representatives.
    std::vector<LatinSquare> reps =
        order <= 4 ? completion::latin_squares(order) : reduced_squares(order);
    std::atomic<int> best{order * order + 1};
    auto work = [&](unsigned offset, unsigned stride) {
        for (std::size_t i = offset; i < reps.size(); i += stride) {
            int cap = best.load() - 1;
            auto found = min_teaching_capped(reps[i], cap);
            if (found) {
                int prev = best.load();
                while (found->first < prev && !best.compare_exchange_weak(prev, found->first)) {
                }
            }
        }
    };
    if (threads <= 1 || reps.size() == 1) {
        work(0, 1);
    } else {
        unsigned nworkers = std::min<unsigned>(threads, reps.size());
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(work, w, nworkers);
        for (auto& t : pool) t.join();
    }
    assert(best.load() <= order * order);  // the full square teaches itself
    return best.load();
}

TripleSet quarter_critical_candidate(int order, int verify_guard, unsigned threads) {
    if (order < 2) throw error("quarter construction needs order >= 2");
    LatinSquare bc = back_circulant(order);
    const int n = order;
    const int a = n / 2;            // upper-left staircase: i+j <= a-1   (0-based)
    const int b = (n + 1) / 2 - 1;  // lower-right staircase: i+j >= 2n-1-b
    std::vector<Triple> ts;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j <= a - 1 || i + j >= 2 * n - 1 - b) ts.push_back({i + 1, j + 1, bc.at(i + 1, j + 1)});
    TripleSet set = TripleSet::from_triples(n, std::move(ts));
    assert(set.size() == n * n / 4);
    if (order <= verify_guard && !is_critical_set(set, bc, threads))
        throw error("quarter-size construction failed criticality verification at order " +
                    std::to_string(order));
    return set;
}

}  // namespace latinkit::teaching
