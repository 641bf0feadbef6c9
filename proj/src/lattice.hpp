#pragma once

// Periodic lattice sums: direct evaluation over |k| <= K plus a tail for
// |k| > K.
//
// The tail is summed analytically. For y in the reference frame and
// |k| > K >= 2, |x - y - kT|^{-p} = (|k|T)^{-p} (1 - d/(kT))^{-p} with
// |d/(kT)| < 1/3, d = y - x. Pairing k with -k kills odd powers of d, so
//   sum_{|k|>K} f(k) = 2 T^{-p} sum_{n even} binom(-p, n) zeta(p+n, K+1) m_n
// where m_n are polynomial moments of the integrand over the frame, computed
// exactly by Gauss-Legendre. The binomial series is truncated at order M and
// the Lagrange remainder bounded explicitly, which keeps K at 2 for every s
// instead of the K ~ tol^{-1/2s} a whole-period oscillation bound needs.
// That oscillation bound is kept as TailMode::crude.

#include <functional>
#include <span>
#include <vector>

#include "twoslope/kernel.hpp"

namespace twoslope::detail {

enum class TailMode { expansion, crude };

struct TailEstimate {
  double value = 0;
  double bound = 0;
};

inline constexpr int kTailOrder = 40;
inline constexpr long kMinPeriods = 2;
inline constexpr long kMaxPeriods = 10'000'000;

/// sum_{|k|>K} int_{rows} int_{period} (u(x) - u(y + kT))^2 |x - y - kT|^{-p}.
/// `rows` and `period` lie in the same frame of length T.
TailEstimate energy_tail(std::span<const Segment> rows, std::span<const Segment> period, double T, double osc,
                         const KernelExponent& s, long K, TailMode mode);

/// Same with the first power of the difference.
TailEstimate cross_tail(std::span<const Segment> rows, std::span<const Segment> period, double T, double osc,
                        const KernelExponent& s, long K);

/// sum_{|k|>K} int_{frame} (ux - u(y + kT)) |x - y - kT|^{-p} dy, frame
/// centered at x.
TailEstimate point_tail(double x, double ux, std::span<const Segment> frame, double T, double osc,
                        const KernelExponent& s, long K);

/// sum over the k-order 0, -1, +1, -2, +2, ... of per-k partial sums, each
/// computed (possibly in parallel) by `term(k)` and reduced in that order.
double ordered_k_sum(long K, const std::function<double(long)>& term);

}  // namespace twoslope::detail
