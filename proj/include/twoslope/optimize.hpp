#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twoslope/energy.hpp"
#include "twoslope/profile.hpp"

namespace twoslope {

struct DescentOptions {
  int max_iters = 500;
  /// Stop when the projected-gradient step (sup norm) falls below this.
  double grad_tol = 1e-9;
  double step_init = 1.0;
  double backtrack_ratio = 0.5;
  int multistart_count = 8;
  std::uint64_t rng_seed = 0x5eed;
  /// Absolute certification tolerance for every energy evaluation.
  double energy_tol = 1e-12;

  void validate() const;
};

struct TraceRow {
  int start = 0;
  int iter = 0;
  double energy = 0;
  double residual = 0;
};

struct MinimizeReport {
  GapConfiguration best_gaps;
  EnergyResult best_energy;
  int iterations = 0;
  bool converged = false;
  /// max_i |g_i - Lambda delta|
  double periodicity_residual = 0;
  /// s = 0 only: the optimal vertical offset and max_i |u(x2) + u(x1)| after
  /// shifting, over each slope -Lambda interval (x1, x2).
  std::optional<double> best_offset;
  std::optional<double> endpoint_antisymmetry;
};

/// dF/dh for shifting slope -Lambda interval `interval_index` right by h:
/// ((Lambda + 1)/T) times the integral of (-Delta)^s u over the interval.
double first_variation(const TwoSlopeProfile& profile, int interval_index, double s, double tol = 1e-12);

/// Gradient of the energy in gap coordinates, projected on sum = 0.
std::vector<double> gap_gradient(const TwoSlopeProfile& profile, double s, double tol = 1e-12);

double periodicity_residual(const GapConfiguration& g, const ProblemParams& params);

/// Projected gradient descent on the gap simplex with Armijo backtracking and
/// Dirichlet-uniform multistarts. Appends iterates to `trace` if given.
MinimizeReport minimize_gaps(const ProblemParams& params, double s, const DescentOptions& opts,
                             std::vector<TraceRow>* trace = nullptr);

/// Exhaustive search over the uniform simplex grid of mesh L Lambda delta / grid_n.
MinimizeReport brute_force(const ProblemParams& params, double s, int grid_n, double energy_tol = 1e-12);

/// Brute force for the s = 0 functional, with the vertical offset optimized
/// in closed form per configuration.
MinimizeReport verify_s0_minimizer(const ProblemParams& params, int grid_n);

/// Gap vectors of the simplex grid in lexicographic order.
std::vector<GapConfiguration> simplex_grid(const ProblemParams& params, int grid_n);

}  // namespace twoslope
