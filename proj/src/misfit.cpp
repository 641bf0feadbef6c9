#include "twoslope/misfit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "twoslope/energy.hpp"
#include "twoslope/errors.hpp"

namespace twoslope {

namespace {

bool poisson_ok(double nu) { return nu > -0.5 && nu < 1; }

}  // namespace

void MisfitInputs::validate() const {
  if (!(G_plus > 0 && std::isfinite(G_plus)) || !(G_minus > 0 && std::isfinite(G_minus)))
    throw InvalidArgument("misfit: shear moduli must be positive");
  if (!poisson_ok(nu_plus) || !poisson_ok(nu_minus))
    throw InvalidArgument("misfit: Poisson ratios must lie in (-1/2, 1)");
  if (!(c_plus > 0 && std::isfinite(c_plus)) || !std::isfinite(c_minus))
    throw InvalidArgument("misfit: lattice spacings must be positive");
  if (!(c_minus >= c_plus)) throw InvalidArgument("misfit: need c_minus >= c_plus");
}

double trace_energy_constant(double G, double nu) {
  if (!(G > 0 && std::isfinite(G))) throw InvalidArgument("trace constant: G must be positive");
  if (!poisson_ok(nu)) throw InvalidArgument("trace constant: nu must lie in (-1/2, 1)");
  return G / (2 * std::numbers::pi * (1 - nu));
}

double alpha_min(const MisfitInputs& in) {
  in.validate();
  const double a = in.G_minus * (1 - in.nu_plus);
  return a / (in.G_plus * (1 - in.nu_minus) + a);
}

MisfitReport misfit_solve(const MisfitInputs& in, double tol) {
  in.validate();
  if (!(tol > 0)) throw InvalidArgument("misfit: tol must be positive");
  MisfitReport r;
  r.c = (in.c_plus + in.c_minus) / 2;
  r.m = (in.c_minus - in.c_plus) / r.c;
  const double a = r.alpha_min = alpha_min(in);
  r.epsilon_core = r.c * (a + 1);
  r.prefactor = in.G_plus * in.G_minus /
                (2 * std::numbers::pi * (in.G_minus * (1 - in.nu_plus) + in.G_plus * (1 - in.nu_minus)));
  const double Ap = trace_energy_constant(in.G_plus, in.nu_plus);
  const double Am = trace_energy_constant(in.G_minus, in.nu_minus);
  r.elastic_weight = a * a * Ap + (1 - a) * (1 - a) * Am;

  r.elastic_slopes = {a * r.m, -(1 - a) * r.m};
  r.plastic_linearized = {-a / (1 + a), (1 - a) / (1 + a)};
  // (1 + m+)/(1 + m-) = c-/(2c+) with (1 - a) m+ = -a m-
  const double q = in.c_minus / (2 * in.c_plus);
  const double den = a + q * (1 - a);
  r.plastic_nonlinear = {(q - 1) * a / den, -(q - 1) * (1 - a) / den};
  r.burgers_sum = (-r.plastic_linearized.plus + r.plastic_linearized.minus) * r.epsilon_core;

  if (r.m == 0) {
    r.coherent = true;
    r.Delta = std::numeric_limits<double>::infinity();
    r.warning = "coherent interface: no misfit dislocations";
    return r;
  }
  if (r.m >= 0.2) r.warning = "misfit strain >= 0.2: outside the semi-coherent regime";
  r.Delta = r.c / r.m + r.epsilon_core;
  r.leading_density = r.prefactor * r.c * r.c / r.Delta * std::log(r.Delta / r.c);

  r.delta = (a + 1) * r.m;
  if (!(r.delta < 1)) throw InvalidArgument("misfit: core width (alpha + 1) m must be below 1");
  const EnergyResult F = energy(build_canonical(ProblemParams(0.5, 1 / r.delta, r.delta, 1)), 0.5, tol);
  r.seminorm_density = F.value;
  r.finite_delta_density = r.elastic_weight * r.c * r.m * F.value;
  r.finite_delta_tail_bound = r.elastic_weight * r.c * r.m * F.tail_bound;
  return r;
}

}  // namespace twoslope
