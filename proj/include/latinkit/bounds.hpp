#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "latinkit/bignat.hpp"

// Log-space evaluation of the counting bounds: the lower bound on the number
// of Latin squares, the upper bound on the number of partial Latin squares
// of a given size, the Sauer-Shelah sum, the normalized counting inequality,
// the VC threshold scan, and the epsilon-delta feasibility search behind the
// quadratic lower bound on critical sets.
//
// Policy: factorials and binomials are exact big integers for orders up to
// 200 (logs taken at the end); beyond that, and for fractional factorials,
// lgamma on 80-bit long doubles (64 mantissa bits on x86-64).

namespace latinkit::bounds {

struct LogValue {
    long double ln = 0;  // natural log of the magnitude
    bool exact = false;  // backed by exact integer arithmetic end to end
};

inline constexpr int kExactIntegerGuard = 200;

// ln of (n!)^(2n) / n^(n^2), a lower bound on ln |L_n|.
LogValue latin_lower_bound(int n);

// ln of binom(n^2,k) * n!^(2n-k/n) * e^(n(3+ln((2*pi*n)^2)/4)) / ((n-k/n)!^(2n) * e^k),
// an upper bound on ln |T_{n,k}|. The fractional factorial is Gamma(n-k/n+1).
LogValue partial_upper_bound(int n, std::uint64_t k);

// ln of sum_{i=0..d} binom(omega_size, i).
LogValue sauer_shelah(std::uint64_t omega_size, std::uint64_t d);

struct IneqSides {
    LogValue lhs;  // ln of c^(3c) * n^c
    LogValue rhs;  // ln of e^(3c) * e^(ln((2*pi*n)^2)/n) * n^(2/n^2)
};

// Both sides of the normalized counting inequality, for c in (0,1], n >= 2.
IneqSides counting_inequality_sides(long double c, std::uint64_t n);

struct VcThresholdReport {
    std::uint64_t k_star = 0;   // largest k with partial_upper_bound(n,k) < latin_lower_bound(n) - 2 ln n
    bool any_k = false;         // false when no k satisfies the comparison
    long double closed_form = 0;  // n^2 - e^(1+1/sqrt(n)) * n^(5/3)
    bool regime_reached = false;  // closed_form > 0 and k_star >= ceil(closed_form)
};

VcThresholdReport vc_threshold(int n);

struct EpsilonDeltaReport {
    long double C = 0;
    long double epsilon = 0;  // best feasible epsilon = mu * delta
    long double delta = 0;
    long double mu = 0;       // m/n ratio bound, epsilon / delta
    // slacks, all >= 0 at the reported point:
    //   [0] 1 - (mu + delta)
    //   [1] 1 - (epsilon + 3 mu)
    //   [2] 1 - (2 delta + 4 mu)
    //   [3] (2 - 2 delta - 4 mu) - C (1 - mu)
    std::array<long double, 4> slacks{};
};

std::array<long double, 4> constraint_slacks(long double C, long double delta, long double mu);

// Maximizes epsilon = mu * delta subject to the four constraints above.
// Grid refinement down to 1e-6 resolution, polished by the closed-form
// stationary points of the active constraints; the two routes must agree to
// 1e-5 relative. Throws for C outside (0, 2): the degree requirement is
// unreachable at 2.
EpsilonDeltaReport epsilon_search(long double C);

struct BoundsTable {
    std::uint64_t n = 0;
    long double vc_rtd_lower = 0;   // n^2 - e^(1+1/sqrt(n)) n^(5/3)
    long double td_upper = 0;       // n^2 - (sqrt(pi)/2) n^(3/2)
    long double scs_lower = 0;      // 1e-4 n^2
    std::uint64_t quarter = 0;      // floor(n^2/4)
    bool have_rtd_vc_context = false;
    LogValue rtd_from_vc_bound{};   // ln of 2^(d+1)(d-2)+d+4 at d = floor(vc_rtd_lower)
    bool regime_reached = false;    // lower bound positive and below the upper bound
};

BoundsTable bounds_table(std::uint64_t n);

// ln of sum(exp(v)) over the given log-scale values.
long double log_sum_exp(const std::vector<long double>& values);

}  // namespace latinkit::bounds
