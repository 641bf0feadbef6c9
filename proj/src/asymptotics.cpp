#include "twoslope/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "twoslope/errors.hpp"
#include "twoslope/parallel.hpp"

namespace twoslope {

namespace {

// (r^e - 1)/e, log r at e = 0
long double pow_m1(long double r, long double e) {
  const long double L = std::log(r);
  if (e == 0) return L;
  return std::expm1(e * L) / e;
}

void check_upper_range(double s) {
  if (!(s > 0.5 && s < 1)) throw InvalidArgument("s must lie in (1/2, 1)");
}

}  // namespace

double sigma(double s, double delta) {
  if (!(delta > 0 && delta < 1)) throw InvalidArgument("sigma: delta must lie in (0, 1)");
  if (!(s >= 0.5 && s < 1)) throw InvalidArgument("sigma: no normalizer for s outside [1/2, 1)");
  if (s == 0.5) return std::log(1 / delta);
  if (2 * s - 1 < 1e-6) throw InvalidArgument("sigma: s too close to 1/2 (pole of the normalizer)");
  return std::pow(delta, 1 - 2 * s) / (2 * s * (1 - s) * (2 * s - 1) * (3 - 2 * s));
}

std::vector<SweepRow> ratio_sweep(double s, std::vector<double> deltas, double tol, TailMethod tail) {
  if (deltas.empty()) throw InvalidArgument("sweep: empty delta list");
  if (!(tol > 0)) throw InvalidArgument("sweep: tol must be positive");
  for (double d : deltas) sigma(s, d);  // validation
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  std::vector<SweepRow> rows(deltas.size());
  EnergyOptions opts;
  opts.tail = tail;
  parallel_for(rows.size(), [&](std::size_t i) {
    const double d = deltas[i];
    const TwoSlopeProfile u = build_canonical(ProblemParams(s, 1 / d, d, 1));
    SweepRow& r = rows[i];
    r.delta = d;
    r.sigma = sigma(s, d);
    const EnergyResult e = energy(u, s, tol * std::max(1.0, r.sigma), opts);
    r.energy = e.value;
    r.ratio = e.value / r.sigma;
    r.tail_bound = e.tail_bound;
    r.periods_summed = e.periods_summed;
  });
  return rows;
}

EnergyResult mantissa_constant(double s, double tol) {
  if (!(s > 0 && s < 0.5)) throw InvalidArgument("mantissa: s must lie in (0, 1/2)");
  const Segment w(0.0, 1.0, 0.0, 1.0);
  return periodic_energy(std::span<const Segment>(&w, 1), 1.0, s, tol, true);
}

ExtremalReport extremal_limits(const std::vector<double>& deltas) {
  ExtremalReport out;
  for (double d : deltas) {
    if (!(d > 0 && std::isfinite(d))) throw InvalidArgument("extremal: delta must be positive");
    const TwoSlopeProfile u = build_canonical(ProblemParams(0.0, 1 / d, d, 1));
    out.rows.push_back({d, energy_s0(u, -u.params().rise() / 2), d * energy_s1(u)});
  }
  return out;
}

BreakdownLimits breakdown_limits(double s) {
  check_upper_range(s);
  return {1 / (2 * (1 - s) * (3 - 2 * s)), 1 / (4 * s * (3 - 2 * s)), 1 / (4 * s * (2 * s - 1))};
}

// Both bounds are written through (r^e - 1)/e, which keeps them finite and
// continuous through s = 1/2.
double i8_lower_bound(double s, double delta, double rho) {
  if (!(s > 0 && s < 1) || !(delta > 0)) throw InvalidArgument("i8 bound: bad s or delta");
  if (!(rho > 0 && rho < 0.5)) throw InvalidArgument("i8 bound: rho must lie in (0, 1/2)");
  const long double e = 1.0L - 2.0L * s, d = delta, r = rho;
  const long double w = (1 - 2 * r) * (1 - 2 * r);
  return static_cast<double>(-w / (4.0L * s) * (pow_m1(d, e) + pow_m1(d + 2 * r, e) - 2 * pow_m1(d + r, e)));
}

double i8_upper_bound(double s, double delta) {
  if (!(s > 0 && s < 1) || !(delta > 0)) throw InvalidArgument("i8 bound: bad s or delta");
  const long double e = 1.0L - 2.0L * s, d = delta;
  return static_cast<double>(-1 / (4.0L * s) * (pow_m1(d, e) + pow_m1(d + 2, e) - 2 * pow_m1(d + 1, e)));
}

double constant_sum_residual(double s) {
  check_upper_range(s);
  const long double S = s;
  const long double sum = 1 / (2 * (1 - S) * (3 - 2 * S)) + 1 / (S * (3 - 2 * S)) + 1 / (2 * S * (2 * S - 1));
  return static_cast<double>(sum * 2 * S * (1 - S) * (2 * S - 1) * (3 - 2 * S) - 1);
}

}  // namespace twoslope
