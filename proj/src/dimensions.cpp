#include "latinkit/dimensions.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>

#include "latinkit/completion.hpp"

namespace latinkit::dims {

namespace {

Bitset make_bitset(std::uint32_t universe_size, const std::vector<std::uint32_t>& points) {
    Bitset b((universe_size + 63) / 64, 0);
    for (std::uint32_t p : points) {
        if (p >= universe_size) throw error("concept point " + std::to_string(p) + " outside the universe");
        b[p / 64] |= 1ull << (p % 64);
    }
    return b;
}

// Trace of one concept on the points of s, as a bit word (s.size() <= 25).
std::uint32_t trace_word(const ConceptClass& c, std::size_t concept_idx,
                         const std::vector<std::uint32_t>& s) {
    std::uint32_t w = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        w |= static_cast<std::uint32_t>(c.contains_point(concept_idx, s[i])) << i;
    return w;
}

bool is_shattered(const ConceptClass& c, const std::vector<std::uint32_t>& s) {
    if (s.size() >= 25) return false;  // would need 2^25 concepts
    const std::uint32_t need = 1u << s.size();
    if (c.concepts.size() < need) return false;
    std::vector<char> seen(need, 0);
    std::uint32_t distinct = 0;
    for (std::size_t i = 0; i < c.concepts.size(); ++i) {
        std::uint32_t w = trace_word(c, i, s);
        if (!seen[w]) {
            seen[w] = 1;
            if (++distinct == need) return true;
        }
    }
    return false;
}

// Positions where the two concepts differ.
std::vector<std::uint32_t> diff_points(const ConceptClass& c, std::size_t a, std::size_t b) {
    std::vector<std::uint32_t> out;
    for (std::size_t w = 0; w < c.concepts[a].size(); ++w) {
        std::uint64_t d = c.concepts[a][w] ^ c.concepts[b][w];
        while (d) {
            out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(d)));
            d &= d - 1;
        }
    }
    return out;
}

// Minimum hitting set size over the given difference bitsets (as point lists),
// by increasing-cardinality subset search over the union of relevant points.
int min_hitting_size(const std::vector<std::vector<std::uint32_t>>& diffs) {
    if (diffs.empty()) return 0;
    std::vector<std::uint32_t> relevant;
    for (const auto& d : diffs) relevant.insert(relevant.end(), d.begin(), d.end());
    std::sort(relevant.begin(), relevant.end());
    relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());
    // each diff as a mask over `relevant` indices when small, else point sets
    const std::size_t m = relevant.size();
    std::vector<std::vector<char>> hit(diffs.size(), std::vector<char>(m, 0));
    for (std::size_t d = 0; d < diffs.size(); ++d)
        for (std::uint32_t p : diffs[d]) {
            auto it = std::lower_bound(relevant.begin(), relevant.end(), p);
            hit[d][it - relevant.begin()] = 1;
        }

    std::vector<int> idx;
    // DFS over subsets of given size k covering all diffs
    auto covers = [&](const std::vector<int>& chosen) {
        for (std::size_t d = 0; d < diffs.size(); ++d) {
            bool ok = false;
            for (int i : chosen)
                if (hit[d][i]) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    };
    for (int k = 1; k <= static_cast<int>(m); ++k) {
        idx.assign(k, 0);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            if (covers(idx)) return k;
            int i = k - 1;
            while (i >= 0 && idx[i] == static_cast<int>(m) - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    throw error("hitting-set search failed; concepts not distinct?");
}

int teaching_dim_within(const ConceptClass& c, std::size_t concept_idx,
                        const std::vector<std::uint32_t>& members) {
    std::vector<std::vector<std::uint32_t>> diffs;
    diffs.reserve(members.size() - 1);
    for (std::uint32_t other : members)
        if (other != concept_idx) diffs.push_back(diff_points(c, concept_idx, other));
    return min_hitting_size(diffs);
}

ConceptClass subclass(const ConceptClass& c, const std::vector<std::uint32_t>& members) {
    ConceptClass out;
    out.universe_size = c.universe_size;
    for (std::uint32_t i : members) out.concepts.push_back(c.concepts[i]);
    return out;
}

}  // namespace

ConceptClass ConceptClass::make(std::uint32_t universe_size,
                                const std::vector<std::vector<std::uint32_t>>& concept_points) {
    ConceptClass c;
    c.universe_size = universe_size;
    for (const auto& points : concept_points) c.concepts.push_back(make_bitset(universe_size, points));
    std::vector<Bitset> sorted(c.concepts);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw error("concepts must be pairwise distinct");
    return c;
}

ConceptClass latin_concept_class(int order, int max_order) {
    if (order > max_order)
        throw guard_error("Latin concept class guarded at order " + std::to_string(max_order) + " (got " +
                          std::to_string(order) + ")");
    std::vector<std::vector<std::uint32_t>> concepts;
    for (const LatinSquare& l : completion::latin_squares(order)) {
        std::vector<std::uint32_t> points;
        points.reserve(order * order);
        const TripleSet ts = to_triples(l);
        for (const Triple& t : ts.triples()) points.push_back(latin_point_id(order, t));
        concepts.push_back(std::move(points));
    }
    return ConceptClass::make(static_cast<std::uint32_t>(order) * order * order, concepts);
}

std::uint32_t latin_point_id(int order, const Triple& t) {
    return ((t.row - 1) * order + (t.col - 1)) * order + (t.sym - 1);
}

Triple latin_point_triple(int order, std::uint32_t point) {
    int sym = point % order;
    int col = point / order % order;
    int row = point / order / order;
    return {row + 1, col + 1, sym + 1};
}

std::vector<std::vector<std::uint32_t>> shattered_sets(const ConceptClass& c,
                                                       std::optional<int> size_limit) {
    if (c.concepts.empty()) return {};
    if (!size_limit && c.universe_size > kShatterUniverseGuard)
        throw guard_error("full shattering enumeration guarded at universe size " +
                          std::to_string(kShatterUniverseGuard) + "; pass a size limit");
    int limit = size_limit ? *size_limit : static_cast<int>(c.universe_size);

    std::vector<std::vector<std::uint32_t>> out;
    out.push_back({});  // empty set, shattered by any non-empty class
    std::size_t level_begin = 0;
    for (int k = 1; k <= limit; ++k) {
        if ((1ull << k) > c.concepts.size()) break;  // 2^k traces impossible
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            std::uint32_t start = out[i].empty() ? 0 : out[i].back() + 1;
            for (std::uint32_t p = start; p < c.universe_size; ++p) {
                std::vector<std::uint32_t> cand = out[i];
                cand.push_back(p);
                if (is_shattered(c, cand)) out.push_back(std::move(cand));
            }
        }
        if (out.size() == level_end) break;  // no shattered set of size k
        level_begin = level_end;
    }
    return out;
}

int vc_dimension(const ConceptClass& c) {
    if (c.concepts.empty()) throw error("VC-dimension needs a non-empty class");
    std::size_t best = 0;
    for (const auto& s : shattered_sets(c)) best = std::max(best, s.size());
    return static_cast<int>(best);
}

int teaching_dim(const ConceptClass& c, std::size_t concept_idx) {
    if (concept_idx >= c.concepts.size()) throw error("concept index out of range");
    std::vector<std::uint32_t> all(c.concepts.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    return teaching_dim_within(c, concept_idx, all);
}

int td_min(const ConceptClass& c) {
    if (c.concepts.empty()) throw error("td_min needs a non-empty class");
    int best = teaching_dim(c, 0);
    for (std::size_t i = 1; i < c.concepts.size(); ++i) best = std::min(best, teaching_dim(c, i));
    return best;
}

int td_max(const ConceptClass& c) {
    if (c.concepts.empty()) throw error("td_max needs a non-empty class");
    int best = teaching_dim(c, 0);
    for (std::size_t i = 1; i < c.concepts.size(); ++i) best = std::max(best, teaching_dim(c, i));
    return best;
}

namespace {

int rtd_canonical(const ConceptClass& c) {
    std::vector<std::uint32_t> current(c.concepts.size());
    for (std::uint32_t i = 0; i < current.size(); ++i) current[i] = i;
    int plan_max = 0;
    while (!current.empty()) {
        int layer_min = std::numeric_limits<int>::max();
        std::vector<int> tds(current.size());
        for (std::size_t i = 0; i < current.size(); ++i) {
            tds[i] = teaching_dim_within(c, current[i], current);
            layer_min = std::min(layer_min, tds[i]);
        }
        plan_max = std::max(plan_max, layer_min);
        std::vector<std::uint32_t> next;
        for (std::size_t i = 0; i < current.size(); ++i)
            if (tds[i] != layer_min) next.push_back(current[i]);
        current = std::move(next);
    }
    return plan_max;
}

}  // namespace

int rtd_brute_force(const ConceptClass& c) {
    if (c.concepts.empty()) throw error("rtd needs a non-empty class");
    if (c.concepts.size() > 20) throw guard_error("brute-force RTD guarded at 20 concepts");
    const std::size_t m = c.concepts.size();
    int best = 0;
    for (std::uint64_t mask = 1; mask < (1ull << m); ++mask) {
        std::vector<std::uint32_t> members;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) members.push_back(static_cast<std::uint32_t>(i));
        int fam_min = std::numeric_limits<int>::max();
        for (std::uint32_t i : members) fam_min = std::min(fam_min, teaching_dim_within(c, i, members));
        best = std::max(best, fam_min);
    }
    return best;
}

RtdResult rtd_checked(const ConceptClass& c) {
    if (c.concepts.empty()) throw error("rtd needs a non-empty class");
    RtdResult r;
    r.value = rtd_canonical(c);
    if (c.concepts.size() <= 10 && c.universe_size <= 20) {
        int brute = rtd_brute_force(c);
        if (brute != r.value) {
            r.value = brute;
            r.canonical_disagreed = true;
        }
    }
    return r;
}

int rtd(const ConceptClass& c) { return rtd_checked(c).value; }

Elimination eliminate_unique(const ConceptClass& c, int k) {
    if (k < 0) throw error("k must be non-negative");
    Elimination e;
    std::vector<std::uint32_t> current(c.concepts.size());
    for (std::uint32_t i = 0; i < current.size(); ++i) current[i] = i;
    bool removed_any = true;
    while (removed_any && !current.empty()) {
        removed_any = false;
        std::vector<std::uint32_t> next;
        for (std::size_t i = 0; i < current.size(); ++i) {
            if (teaching_dim_within(c, current[i], current) <= k) {
                e.removed.push_back(current[i]);
                removed_any = true;
            } else {
                next.push_back(current[i]);
            }
        }
        current = std::move(next);
    }
    e.remaining = subclass(c, current);
    return e;
}

DimensionReport dimension_report(const ConceptClass& c) {
    DimensionReport r;
    r.vc = vc_dimension(c);
    r.td_min = td_min(c);
    r.td_max = td_max(c);
    r.rtd = rtd(c);
    r.shattered_count = shattered_sets(c).size();
    return r;
}

}  // namespace latinkit::dims
