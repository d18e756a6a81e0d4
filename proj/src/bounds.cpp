#include "latinkit/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "latinkit/core.hpp"

namespace latinkit::bounds {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

long double lgamma_ld(long double x) { return std::lgamma(x); }

// ln(n!), exact-backed for n <= kExactIntegerGuard
long double ln_factorial(std::uint64_t n, bool& exact) {
    if (n <= 1) {
        exact = true;
        return 0.0L;
    }
    if (n <= kExactIntegerGuard) {
        exact = true;
        return BigNat::factorial(static_cast<unsigned>(n)).log();
    }
    exact = false;
    return lgamma_ld(static_cast<long double>(n) + 1.0L);
}

long double ln_binomial(std::uint64_t n, std::uint64_t k, bool exact_path, bool& exact) {
    if (k > n) throw error("binomial with k > n");
    if (k == 0 || k == n) {
        exact = true;
        return 0.0L;
    }
    if (exact_path) {
        exact = true;
        return BigNat::binomial(n, k).log();
    }
    exact = false;
    long double nn = static_cast<long double>(n), kk = static_cast<long double>(k);
    return lgamma_ld(nn + 1) - lgamma_ld(kk + 1) - lgamma_ld(nn - kk + 1);
}

// ln((2*pi*n)^2) = 2 ln(2*pi*n)
long double ln_two_pi_n_squared(long double n) { return 2.0L * std::log(2.0L * kPi * n); }

}  // namespace

LogValue latin_lower_bound(int n) {
    if (n < 1) throw error("order must be at least 1");
    bool exact = false;
    long double lf = ln_factorial(static_cast<std::uint64_t>(n), exact);
    long double ln = 2.0L * n * lf -
                     static_cast<long double>(n) * n * std::log(static_cast<long double>(n));
    return {ln, exact};
}

LogValue partial_upper_bound(int n, std::uint64_t k) {
    if (n < 1) throw error("order must be at least 1");
    const std::uint64_t n2 = static_cast<std::uint64_t>(n) * n;
    if (k > n2) throw error("size k must be at most n^2");
    const bool exact_path = n <= kExactIntegerGuard;
    const long double nl = static_cast<long double>(n);
    const long double frac = static_cast<long double>(k) / nl;  // k/n

    bool binom_exact = false, fact_exact = false, tail_exact = false;
    long double ln_binom = ln_binomial(n2, k, exact_path, binom_exact);
    long double ln_nfact = ln_factorial(static_cast<std::uint64_t>(n), fact_exact);

    long double ln_tail;  // ln (n - k/n)!  as Gamma(n - k/n + 1)
    if (k % static_cast<std::uint64_t>(n) == 0) {
        ln_tail = ln_factorial(static_cast<std::uint64_t>(n) - k / n, tail_exact);
    } else {
        tail_exact = false;
        ln_tail = lgamma_ld(nl - frac + 1.0L);
    }

    long double ln = ln_binom + (2.0L * nl - frac) * ln_nfact +
                     nl * (3.0L + ln_two_pi_n_squared(nl) / 4.0L) - 2.0L * nl * ln_tail -
                     static_cast<long double>(k);
    return {ln, binom_exact && fact_exact && tail_exact};
}

LogValue sauer_shelah(std::uint64_t omega_size, std::uint64_t d) {
    if (d > omega_size) throw error("d must be at most the universe size");
    if (omega_size <= 40000) {
        BigNat total(1);  // i = 0 term
        BigNat term(1);
        for (std::uint64_t i = 1; i <= d; ++i) {
            term.mul(omega_size - i + 1);
            term.div_exact(i);
            total.add(term);
        }
        return {total.log(), true};
    }
    std::vector<long double> logs;
    logs.reserve(d + 1);
    bool ex = false;
    for (std::uint64_t i = 0; i <= d; ++i) logs.push_back(ln_binomial(omega_size, i, false, ex));
    return {log_sum_exp(logs), false};
}

IneqSides counting_inequality_sides(long double c, std::uint64_t n) {
    if (!(c > 0.0L) || c > 1.0L) throw error("c must lie in (0, 1]");
    if (n < 2) throw error("n must be at least 2");
    const long double nl = static_cast<long double>(n);
    const long double ln_n = std::log(nl);
    IneqSides sides;
    sides.lhs = {3.0L * c * std::log(c) + c * ln_n, false};
    sides.rhs = {3.0L * c + ln_two_pi_n_squared(nl) / nl + 2.0L * ln_n / (nl * nl), false};
    return sides;
}

VcThresholdReport vc_threshold(int n) {
    if (n < 2) throw error("order must be at least 2");
    VcThresholdReport rep;
    const std::uint64_t total = static_cast<std::uint64_t>(n) * n;
    const long double nl = static_cast<long double>(n);
    rep.closed_form = nl * nl - std::exp(1.0L + 1.0L / std::sqrt(nl)) * std::pow(nl, 5.0L / 3.0L);

    const long double threshold = latin_lower_bound(n).ln - 2.0L * std::log(nl);
    auto pred = [&](std::uint64_t k) { return partial_upper_bound(n, k).ln < threshold; };

    const std::int64_t stride = std::max<std::int64_t>(1, static_cast<std::int64_t>(total / 4096));
    std::int64_t hit = -1;
    bool tested_zero = false;
    for (std::int64_t k = static_cast<std::int64_t>(total); k >= 0; k -= stride) {
        if (k == 0) tested_zero = true;
        if (pred(static_cast<std::uint64_t>(k))) {
            hit = k;
            break;
        }
    }
    if (hit < 0 && !tested_zero && pred(0)) hit = 0;
    if (hit >= 0) {
        rep.any_k = true;
        std::uint64_t upper = std::min<std::uint64_t>(total, static_cast<std::uint64_t>(hit + stride));
        if (stride <= 4096) {
            for (std::uint64_t k = upper;; --k) {
                if (pred(k)) {
                    rep.k_star = k;
                    break;
                }
                if (k == static_cast<std::uint64_t>(hit)) break;  // unreachable: hit satisfies pred
            }
        } else {
            // wide bracket: bisect for the crossing (the bound is smooth in k)
            std::uint64_t lo = static_cast<std::uint64_t>(hit), hi = upper;
            while (lo < hi) {
                std::uint64_t mid = lo + (hi - lo + 1) / 2;
                if (pred(mid))
                    lo = mid;
                else
                    hi = mid - 1;
            }
            rep.k_star = lo;
        }
    }
    rep.regime_reached = rep.any_k && rep.closed_form > 0 &&
                         static_cast<long double>(rep.k_star) >= std::ceil(rep.closed_form);
    return rep;
}

std::array<long double, 4> constraint_slacks(long double C, long double delta, long double mu) {
    return {
        1.0L - (mu + delta),
        1.0L - (mu * delta + 3.0L * mu),
        1.0L - (2.0L * delta + 4.0L * mu),
        (2.0L - 2.0L * delta - 4.0L * mu) - C * (1.0L - mu),
    };
}

namespace {

bool feasible_point(long double C, long double delta, long double mu, long double tol = 0) {
    if (!(delta > 0) || !(mu > 0)) return false;
    auto s = constraint_slacks(C, delta, mu);
    // tol admits stationary points that sit exactly on a boundary; the value
    // there is the supremum of the open region
    return s[0] > -tol && s[1] > -tol && s[2] > -tol && s[3] >= -tol;
}

}  // namespace

EpsilonDeltaReport epsilon_search(long double C) {
    if (!(C > 0.0L) || C >= 2.0L)
        throw error("decomposition constant must lie in (0, 2): the degree requirement is unreachable");

    // grid refinement over (delta, mu) down to 1e-6 resolution and beyond.
    // The objective is flat along the active constraint, so windows keep a
    // generous +-8-step margin around the incumbent.
    long double lo_d = 0, hi_d = 1, lo_m = 0, hi_m = 1;
    long double best_eps = 0, best_d = 0, best_m = 0;
    const int cells = 200;
    for (int level = 0; level < 6; ++level) {
        long double step_d = (hi_d - lo_d) / cells, step_m = (hi_m - lo_m) / cells;
        long double cur_eps = best_eps, cur_d = best_d, cur_m = best_m;
        for (int i = 0; i <= cells; ++i) {
            long double d = lo_d + i * step_d;
            for (int j = 0; j <= cells; ++j) {
                long double m = lo_m + j * step_m;
                if (!feasible_point(C, d, m)) continue;
                if (d * m > cur_eps) {
                    cur_eps = d * m;
                    cur_d = d;
                    cur_m = m;
                }
            }
        }
        best_eps = cur_eps;
        best_d = cur_d;
        best_m = cur_m;
        lo_d = std::max(0.0L, best_d - 8 * step_d);
        hi_d = std::min(1.0L, best_d + 8 * step_d);
        lo_m = std::max(0.0L, best_m - 8 * step_m);
        hi_m = std::min(1.0L, best_m + 8 * step_m);
    }

    // closed-form stationary points of the possible active-constraint sets:
    // degree constraint active and interior, the degree/symbol corner, and
    // the symbol constraint active and interior
    const long double t = 2.0L - C;
    struct Candidate {
        long double d, m;
    };
    std::array<Candidate, 3> candidates = {{
        {t / 4.0L, t / (2.0L * (4.0L - C))},
        {(4.0L - 3.0L * C) / (2.0L * C), (C - 1.0L) / C},
        {0.25L, 0.125L},
    }};
    long double closed_eps = 0, closed_d = 0, closed_m = 0;
    for (const Candidate& cand : candidates) {
        // the degree constraint is exactly active at these points; allow float noise
        if (!feasible_point(C, cand.d, cand.m, 1e-15L)) continue;
        if (cand.d * cand.m > closed_eps) {
            closed_eps = cand.d * cand.m;
            closed_d = cand.d;
            closed_m = cand.m;
        }
    }
    if (closed_eps <= 0) throw error("epsilon search found no feasible closed-form point");
    if (std::fabs(closed_eps - best_eps) > 1e-5L * closed_eps)
        throw error("epsilon search: grid and closed-form optima disagree beyond 1e-5 relative");

    EpsilonDeltaReport rep;
    rep.C = C;
    rep.delta = closed_d;
    rep.mu = closed_m;
    rep.epsilon = closed_eps;
    rep.slacks = constraint_slacks(C, closed_d, closed_m);
    for (long double& s : rep.slacks)
        if (s < 0 && s > -1e-15L) s = 0;  // float noise at an active constraint
    return rep;
}

BoundsTable bounds_table(std::uint64_t n) {
    if (n < 2) throw error("order must be at least 2");
    if (n > 3000000000ull) throw error("order too large for the bound table");
    BoundsTable t;
    t.n = n;
    const long double nl = static_cast<long double>(n);
    t.vc_rtd_lower = nl * nl - std::exp(1.0L + 1.0L / std::sqrt(nl)) * std::pow(nl, 5.0L / 3.0L);
    t.td_upper = nl * nl - (std::sqrt(kPi) / 2.0L) * std::pow(nl, 1.5L);
    t.scs_lower = 1e-4L * nl * nl;
    t.quarter = n * n / 4;
    t.regime_reached = t.vc_rtd_lower > 0 && t.vc_rtd_lower < t.td_upper;

    // context value 2^(d+1)(d-2)+d+4 at d = floor(vc_rtd_lower); defined for d >= 1
    if (t.vc_rtd_lower >= 1) {
        t.have_rtd_vc_context = true;
        const long double dl = std::floor(t.vc_rtd_lower);
        if (dl <= 4096) {
            const unsigned d = static_cast<unsigned>(dl);
            if (d == 1) {
                t.rtd_from_vc_bound = {0.0L, true};  // 4*(-1)+1+4 = 1
            } else {
                BigNat v = BigNat::pow2(d + 1);
                v.mul(d - 2);
                v.add(static_cast<std::uint64_t>(d) + 4);
                t.rtd_from_vc_bound = {v.log(), true};
            }
        } else {
            // 2^(d+1)(d-2) dominates; the +d+4 term is below long double noise
            t.rtd_from_vc_bound = {(dl + 1) * std::numbers::ln2_v<long double> + std::log(dl - 2), false};
        }
    }
    return t;
}

long double log_sum_exp(const std::vector<long double>& values) {
    if (values.empty()) throw error("log_sum_exp of an empty list");
    long double m = *std::max_element(values.begin(), values.end());
    long double sum = 0;
    for (long double v : values) sum += std::exp(v - m);
    return m + std::log(sum);
}

}  // namespace latinkit::bounds
