// Acceptance suite: one check per release criterion, each printed as a
// PASS/FAIL line with its runtime and held to its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "latinkit/bounds.hpp"
#include "latinkit/completion.hpp"
#include "latinkit/decomposition.hpp"
#include "latinkit/dimensions.hpp"
#include "latinkit/forcing.hpp"
#include "latinkit/teaching.hpp"
#include "oracles.hpp"

using namespace latinkit;

namespace {

const char* kSamplePartial = "1 . . .\n. 2 . .\n. . . .\n. 4 2 .";
const char* kSampleFull = "1 3 4 2\n4 2 1 3\n2 1 3 4\n3 4 2 1";
constexpr unsigned kThreads = 2;

struct Checker {
    int failures = 0;

    void criterion(int number, const std::string& name, double budget_seconds,
                   const std::function<bool(std::string&)>& body) {
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > budget_seconds) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over budget ") +
                      std::to_string(budget_seconds) + "s";
        }
        std::printf("%s criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                    elapsed, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        failures += !ok;
    }
};

bool extends(const LatinSquare& l, const PartialLatinSquare& p) {
    for (int r = 1; r <= p.order(); ++r)
        for (int c = 1; c <= p.order(); ++c)
            if (p.at(r, c) != 0 && l.at(r, c) != p.at(r, c)) return false;
    return true;
}

}  // namespace

int main() {
    Checker checker;

    checker.criterion(1, "4x4 sample set is strong, teaching and critical", 1.0, [](std::string& detail) {
        PartialLatinSquare partial = parse_grid(kSamplePartial);
        LatinSquare full = LatinSquare::from_partial(parse_grid(kSampleFull));
        TripleSet set = to_triples(partial);
        bool strong = forcing::is_strong_teaching_set(set, full) &&
                      forcing::propagate(partial) == full.as_partial();
        bool teaching_yes = completion::count_completions(partial, 2) == 1;
        bool critical = true;
        for (std::size_t drop = 0; drop < set.triples().size(); ++drop) {
            std::vector<Triple> rest;
            for (std::size_t i = 0; i < set.triples().size(); ++i)
                if (i != drop) rest.push_back(set.triples()[i]);
            critical = critical &&
                       completion::count_completions(from_triples(TripleSet::from_triples(4, rest)), 2) >= 2;
        }
        detail = "strong=" + std::string(strong ? "yes" : "no") +
                 " teaching=" + (teaching_yes ? "yes" : "no") + " critical=" + (critical ? "yes" : "no");
        return strong && teaching_yes && critical;
    });

    checker.criterion(2, "square counts 1,2,12,576,161280 via cover search and row brute force", 60.0,
                      [](std::string& detail) {
                          const std::uint64_t expected[] = {0, 1, 2, 12, 576, 161280};
                          bool ok = true;
                          for (int n = 1; n <= 5; ++n) {
                              std::uint64_t via_cover = completion::count_latin(n, kThreads);
                              std::uint64_t via_rows = oracle::latin_squares_brute(n).size();
                              detail += (n > 1 ? " " : "") + std::to_string(via_cover);
                              ok = ok && via_cover == expected[n] && via_rows == expected[n];
                          }
                          return ok;
                      });

    checker.criterion(3, "smallest critical sets 0,1,2,4 exhaustively and 6 for order 5", 7800.0,
                      [](std::string& detail) {
                          const int expected[] = {0, 0, 1, 2, 4, 6};
                          bool ok = true;
                          for (int n = 1; n <= 5; ++n) {
                              int v = teaching::scs(n, 5, kThreads);
                              detail += (n > 1 ? " " : "") + std::to_string(v);
                              ok = ok && v == expected[n];
                          }
                          return ok;
                      });

    checker.criterion(4, "verified quarter-size critical sets for orders 2..8", 600.0,
                      [](std::string& detail) {
                          bool ok = true;
                          for (int n = 2; n <= 8; ++n) {
                              TripleSet set = teaching::quarter_critical_candidate(n, 8, kThreads);
                              LatinSquare bc = teaching::back_circulant(n);
                              bool crit = teaching::is_critical_set(set, bc, kThreads);
                              ok = ok && crit && set.size() == n * n / 4;
                              detail += (n > 2 ? " " : "") + std::to_string(set.size());
                          }
                          return ok;
                      });

    checker.criterion(5, "shattered-set counts dominate family sizes", 300.0, [](std::string& detail) {
        dims::ConceptClass l3 = dims::latin_concept_class(3);
        std::uint64_t full_count = dims::shattered_sets(l3).size();
        bool ok = full_count >= l3.concepts.size();
        std::mt19937 rng(515);
        int violations = 0;
        for (int iter = 0; iter < 100; ++iter) {
            std::vector<std::vector<std::uint32_t>> member_points;
            for (std::size_t i = 0; i < l3.concepts.size(); ++i) {
                if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.5) continue;
                std::vector<std::uint32_t> points;
                for (std::uint32_t p = 0; p < l3.universe_size; ++p)
                    if (l3.contains_point(i, p)) points.push_back(p);
                member_points.push_back(std::move(points));
            }
            if (member_points.empty()) continue;
            dims::ConceptClass sub = dims::ConceptClass::make(l3.universe_size, member_points);
            if (dims::shattered_sets(sub).size() < sub.concepts.size()) ++violations;
        }
        detail = "class count " + std::to_string(full_count) + ", violations " + std::to_string(violations);
        return ok && violations == 0;
    });

    checker.criterion(6, "dimension sandwich and canonical-vs-brute recursive teaching", 300.0,
                      [](std::string& detail) {
                          bool ok = true;
                          for (int n = 1; n <= 3; ++n) {
                              dims::DimensionReport rep = dims::dimension_report(dims::latin_concept_class(n));
                              ok = ok && rep.td_min <= rep.rtd && rep.rtd <= rep.td_max;
                          }
                          std::mt19937 rng(616);
                          std::uniform_real_distribution<double> coin(0, 1);
                          int checked = 0;
                          for (int iter = 0; iter < 50; ++iter) {
                              std::set<std::vector<std::uint32_t>> seen;
                              std::uint32_t universe = 1 + iter % 6;
                              std::size_t want = 1 + static_cast<std::size_t>(coin(rng) * 9);
                              int budget = 300;
                              while (seen.size() < want && budget-- > 0) {
                                  std::vector<std::uint32_t> pts;
                                  for (std::uint32_t p = 0; p < universe; ++p)
                                      if (coin(rng) < 0.5) pts.push_back(p);
                                  seen.insert(pts);
                              }
                              dims::ConceptClass c = dims::ConceptClass::make(
                                  universe, {seen.begin(), seen.end()});
                              int canonical = dims::rtd(c);
                              int brute = dims::rtd_brute_force(c);
                              int lo = dims::td_min(c), hi = dims::td_max(c);
                              ok = ok && canonical == brute && lo <= canonical && canonical <= hi;
                              ++checked;
                          }
                          detail = std::to_string(checked) + " random classes";
                          return ok;
                      });

    checker.criterion(7, "partial-square counts up to the VC size cover the order-3 class", 600.0,
                      [](std::string& detail) {
                          dims::ConceptClass l3 = dims::latin_concept_class(3);
                          int d = dims::vc_dimension(l3);
                          auto profile = completion::enumerate_partial_profile(3);
                          std::uint64_t sum = 0;
                          for (int k = 0; k <= d; ++k) sum += profile[k];
                          detail = "vc " + std::to_string(d) + ", sum " + std::to_string(sum) + " >= 12";
                          return sum >= 12;
                      });

    checker.criterion(8, "log-space bracketing of the counting bounds", 300.0, [](std::string& detail) {
        const std::uint64_t counts[] = {0, 1, 2, 12, 576, 161280};
        bool ok = true;
        for (int n = 1; n <= 5; ++n)
            ok = ok && bounds::latin_lower_bound(n).ln <=
                           std::log(static_cast<long double>(counts[n])) + 1e-9L;
        for (int n = 1; n <= 4; ++n) {
            auto profile = completion::enumerate_partial_profile(n);
            for (int k = 0; k <= n * n; ++k)
                ok = ok && bounds::partial_upper_bound(n, k).ln >=
                               std::log(static_cast<long double>(profile[k])) - 1e-9L;
        }
        detail = "orders 1..5 below, orders 1..4 above, tolerance 1e-9";
        return ok;
    });

    checker.criterion(9, "epsilon-delta feasibility certifies the quadratic-bound constants", 10.0,
                      [](std::string& detail) {
                          const long double C = 101.0L / 52.0L;
                          bounds::EpsilonDeltaReport rep = bounds::epsilon_search(C);
                          bool ok = rep.epsilon >= 1e-4L;
                          for (long double s : rep.slacks) ok = ok && s >= 0.0L;

                          const long double delta = 0.012L, mu = 1e-4L / 0.012L;
                          auto slacks = bounds::constraint_slacks(C, delta, mu);
                          for (long double s : slacks) ok = ok && s >= 0.0L;
                          ok = ok && mu <= 0.0084L && mu > 0.0083L;
                          long double symbols = 2 * delta + 4 * mu;
                          ok = ok && symbols < 0.06L && std::floor(symbols * 1e4L) == 573.0L;
                          long double degree = 2 - 2 * (delta + 2 * mu);
                          ok = ok && degree > 1.9426L && std::floor(degree * 1e4L) == 19426.0L;

                          bounds::EpsilonDeltaReport weak = bounds::epsilon_search(1.5L);
                          ok = ok && weak.epsilon >= std::pow(2.0L, -7.0L);
                          char buf[160];
                          std::snprintf(buf, sizeof buf,
                                        "eps=%.6Lg mu=%.6Lg symbols=%.6Lg degree=%.6Lg weak-eps=%.6Lg",
                                        rep.epsilon, mu, symbols, degree, weak.epsilon);
                          detail = buf;
                          return ok;
                      });

    checker.criterion(10, "normalized counting inequality at n = 10^6", 10.0, [](std::string& detail) {
        const std::uint64_t n = 1000000;
        const long double c = std::exp(1.0L + 1.0L / std::sqrt(static_cast<long double>(n))) /
                              std::pow(static_cast<long double>(n), 1.0L / 3.0L);
        bounds::IneqSides sides = bounds::counting_inequality_sides(c, n);
        bool ok = sides.lhs.ln - sides.rhs.ln > 1e-12L * std::fabs(sides.rhs.ln);
        const long double c0 = std::pow(static_cast<long double>(n), -1.0L / 3.0L);
        long double prev = -1e30L;
        for (int i = 0; i <= 100; ++i) {
            long double ci = c0 + (1.0L - c0) * i / 100.0L;
            long double v = bounds::counting_inequality_sides(ci, n).lhs.ln - 3.0L * ci;
            ok = ok && v >= prev - 1e-12L * std::fabs(prev);
            prev = v;
        }
        char buf[120];
        std::snprintf(buf, sizeof buf, "lhs=%.9Lg rhs=%.9Lg", sides.lhs.ln, sides.rhs.ln);
        detail = buf;
        return ok;
    });

    checker.criterion(11, "triangle decompositions biject with squares; leave graphs balanced", 300.0,
                      [](std::string& detail) {
                          bool ok =
                              decomp::count_k3_decompositions(decomp::TripartiteGraph::complete(2),
                                                              xc::kNoCap, 6, kThreads) == 2 &&
                              decomp::count_k3_decompositions(decomp::TripartiteGraph::complete(3),
                                                              xc::kNoCap, 6, kThreads) == 12;
                          std::mt19937 rng(1111);
                          for (int iter = 0; iter < 1000; ++iter) {
                              int n = 2 + iter % 6;
                              PartialLatinSquare p = oracle::random_partial(n, rng);
                              decomp::TripartiteGraph g = decomp::leave_graph(p);
                              ok = ok && decomp::is_balanced(g) && decomp::is_locally_balanced(g) &&
                                   g.edge_count() == static_cast<std::size_t>(3 * n * n - 3 * p.size());
                          }
                          detail = "counts 2 and 12; 1000 leave graphs";
                          return ok;
                      });

    checker.criterion(12, "second-completion pipeline is sound and nearly complete", 600.0,
                      [](std::string& detail) {
                          std::mt19937 rng(20240817);
                          int agree = 0, total = 0;
                          bool sound = true;
                          for (int n : {4, 5}) {
                              std::vector<LatinSquare> squares = completion::latin_squares(n);
                              std::uniform_int_distribution<std::size_t> pick(0, squares.size() - 1);
                              for (int iter = 0; iter < 100; ++iter) {
                                  const LatinSquare& l = squares[pick(rng)];
                                  std::uniform_int_distribution<int> sizes(0, n * n / 4);
                                  int target = sizes(rng);
                                  std::vector<int> cells(n * n);
                                  for (int i = 0; i < n * n; ++i) cells[i] = i;
                                  std::shuffle(cells.begin(), cells.end(), rng);
                                  std::vector<std::pair<int, int>> pos;
                                  for (int i = 0; i < target; ++i)
                                      pos.push_back({cells[i] / n + 1, cells[i] % n + 1});
                                  PartialLatinSquare p = restrict(l, pos);
                                  bool oracle_second = completion::count_completions(p, 2) == 2;
                                  bool pipeline_second = false;
                                  try {
                                      auto other = decomp::second_completion(p, l, 0.95L, 6, 1);
                                      if (other) {
                                          pipeline_second = true;
                                          sound = sound && !(*other == l) && extends(*other, p) &&
                                                  oracle_second;
                                      }
                                  } catch (const error&) {
                                  }
                                  ++total;
                                  agree += pipeline_second == oracle_second;
                              }
                          }
                          double rate = static_cast<double>(agree) / total;
                          char buf[80];
                          std::snprintf(buf, sizeof buf, "agreement %.1f%% over %d pairs", 100 * rate, total);
                          detail = buf;
                          return sound && rate >= 0.95;
                      });

    if (checker.failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", checker.failures);
    return checker.failures;
}
