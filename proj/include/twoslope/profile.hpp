#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twoslope/kernel.hpp"

namespace twoslope {

/// T = L (Lambda + 1) delta. `s` is carried for convenience of callers that
/// bundle a run configuration; 0 and 1 denote the extremal functionals.
struct ProblemParams {
  double s = 0.5;
  double Lambda = 1.0;
  double delta = 0.5;
  int L = 1;
  double T = 1.0;

  ProblemParams() = default;
  ProblemParams(double s, double Lambda, double delta, int L);

  /// Validating constructor for an externally supplied period.
  static ProblemParams with_period(double s, double Lambda, double delta, int L, double T);

  /// Length Lambda * delta of one slope-(+1) run in the canonical profile.
  double rise() const noexcept { return Lambda * delta; }
};

/// Lengths of the slope-(+1) runs between consecutive slope-(-Lambda)
/// intervals, cyclically. Feasible set: gaps >= 0, sum = L Lambda delta.
struct GapConfiguration {
  std::vector<double> gaps;
};

/// A T-periodic, continuous, piecewise-affine function with u' in {1, -Lambda}
/// whose slope-(-Lambda) set is the union of the intervals (e_i - delta, e_i)
/// and their T-translates.
class TwoSlopeProfile {
 public:
  TwoSlopeProfile(const ProblemParams& params, std::vector<double> neg_interval_right_endpoints,
                  double anchor_value);

  const ProblemParams& params() const noexcept { return params_; }
  double period() const noexcept { return params_.T; }
  const std::vector<double>& neg_interval_right_endpoints() const noexcept { return endpoints_; }
  double anchor_value() const noexcept { return anchor_; }

  double evaluate(double x) const;

  /// Affinity segments covering [0, T).
  std::span<const Segment> period_segments() const noexcept { return segments_; }

  /// Affinity segments of periods k_lo..k_hi, i.e. covering [k_lo T, (k_hi + 1) T).
  std::vector<Segment> segments_in_window(long k_lo, long k_hi) const;

  /// Affinity segments covering [lo, hi], cut at both ends.
  std::vector<Segment> segments_over(double lo, double hi) const;

  double oscillation() const noexcept { return osc_; }
  double mean() const noexcept { return mean_; }

  /// Points in [0, T) where u' jumps.
  std::vector<double> kinks() const;
  double distance_to_kink(double x) const;

  GapConfiguration gaps() const;

  /// The profile x -> u(x - t).
  TwoSlopeProfile translated(double t) const;

 private:
  ProblemParams params_;
  std::vector<double> endpoints_;
  double anchor_;
  std::vector<Segment> segments_;
  double osc_ = 0;
  double mean_ = 0;
};

TwoSlopeProfile build_canonical(const ProblemParams& params);
TwoSlopeProfile from_gaps(const GapConfiguration& g, const ProblemParams& params);

/// Checks that `period` (consecutive segments spanning one period) describes a
/// member of the admissible class. Returns the first violation found.
std::optional<std::string> admissibility_violation(std::span<const Segment> period, const ProblemParams& params);

}  // namespace twoslope
