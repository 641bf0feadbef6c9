#pragma once

#include <vector>

#include "twoslope/energy.hpp"

namespace twoslope {

/// Normalizer of the minimal energy as delta -> 0 with Lambda = 1/delta:
/// log(1/delta) at s = 1/2, delta^{1-2s} / (2s(1-s)(2s-1)(3-2s)) above.
/// Throws for s < 1/2 and inside the pole window 0 < 2s - 1 < 1e-6.
double sigma(double s, double delta);

struct SweepRow {
  double delta = 0;
  double sigma = 0;
  double energy = 0;
  double ratio = 0;
  double tail_bound = 0;
  long periods_summed = 0;
};

/// Canonical profile with L = 1, Lambda = 1/delta for each delta. `tol` is
/// relative to sigma. Rows come back sorted by decreasing delta.
std::vector<SweepRow> ratio_sweep(double s, std::vector<double> deltas, double tol,
                                  TailMethod tail = TailMethod::expansion);

inline const std::vector<double> kDefaultSweepDeltas{1e-1, 1e-2, 1e-3, 1e-4};

/// (1/2) int_0^1 int_R |w(x) - w(y)|^2 |x-y|^{-1-2s} for the mantissa
/// w(x) = x - floor(x); s in (0, 1/2).
EnergyResult mantissa_constant(double s, double tol);

struct ExtremalRow {
  double delta = 0;
  /// energy_s0 of the canonical profile (Lambda delta = 1) at offset -1/2
  double energy_s0 = 0;
  /// delta * energy_s1 of the same profile
  double delta_energy_s1 = 0;
};

struct ExtremalReport {
  double limit_s0 = 1.0 / 24;
  double limit_s1 = 0.5;
  std::vector<ExtremalRow> rows;
};

ExtremalReport extremal_limits(const std::vector<double>& deltas);

/// Limits of I1, I2, I8 over delta^{1-2s} for s in (1/2, 1).
struct BreakdownLimits {
  double I1 = 0;
  double I2 = 0;
  double I8 = 0;
};
BreakdownLimits breakdown_limits(double s);

/// Finite-delta lower bound (window rho in (0, 1/2)) and upper bound for I8.
double i8_lower_bound(double s, double delta, double rho = 0.25);
double i8_upper_bound(double s, double delta);

/// [I1 + 2 I2 + 2 I8 limits] * 2s(1-s)(2s-1)(3-2s) - 1, in extended precision.
double constant_sum_residual(double s);

}  // namespace twoslope
