#pragma once

#include <string>

namespace twoslope {

/// Two half-planes bonded along a line: shear moduli, Poisson ratios and
/// lattice spacings of the top (+) and bottom (-) crystals.
struct MisfitInputs {
  double G_plus = 1;
  double G_minus = 1;
  double nu_plus = 0.3;
  double nu_minus = 0.3;
  double c_plus = 1;
  double c_minus = 1;

  void validate() const;
};

struct PlasticSlopes {
  double plus = 0;
  double minus = 0;
};

struct MisfitReport {
  double c = 0;
  double m = 0;
  double alpha_min = 0;
  double epsilon_core = 0;
  /// spacing between dislocations, c/m + epsilon (infinite when coherent)
  double Delta = 0;
  double prefactor = 0;
  double leading_density = 0;
  double finite_delta_density = 0;
  double finite_delta_tail_bound = 0;

  /// dimensionless core width (alpha + 1) m and the seminorm density behind
  /// finite_delta_density
  double delta = 0;
  double seminorm_density = 0;
  /// alpha^2 A+ + (1 - alpha)^2 A-, A = G / (2 pi (1 - nu))
  double elastic_weight = 0;

  PlasticSlopes elastic_slopes;
  PlasticSlopes plastic_linearized;
  PlasticSlopes plastic_nonlinear;
  /// -m+_p eps + m-_p eps from the linearized slopes; equals c
  double burgers_sum = 0;

  bool coherent = false;
  std::string convention = "core width K = 2, epsilon = c (alpha + 1)";
  std::string warning;
};

/// G / (2 pi (1 - nu)).
double trace_energy_constant(double G, double nu);

/// Minimizer of alpha^2 A+ + (1 - alpha)^2 A-.
double alpha_min(const MisfitInputs& in);

/// `tol` is the absolute certification tolerance for the seminorm density.
MisfitReport misfit_solve(const MisfitInputs& in, double tol);

}  // namespace twoslope
