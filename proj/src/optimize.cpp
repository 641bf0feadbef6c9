#include "twoslope/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twoslope/errors.hpp"
#include "twoslope/laplacian.hpp"
#include "twoslope/numeric.hpp"
#include "twoslope/parallel.hpp"
#include "twoslope/rng.hpp"
#include "twoslope/sampling.hpp"

namespace twoslope {

void DescentOptions::validate() const {
  if (max_iters < 1) throw InvalidArgument("max_iters must be positive");
  if (!(grad_tol > 0)) throw InvalidArgument("grad_tol must be positive");
  if (!(step_init > 0)) throw InvalidArgument("step_init must be positive");
  if (!(backtrack_ratio > 0 && backtrack_ratio < 1)) throw InvalidArgument("backtrack_ratio must lie in (0, 1)");
  if (multistart_count < 1) throw InvalidArgument("multistart_count must be positive");
  if (!(energy_tol > 0)) throw InvalidArgument("energy_tol must be positive");
}

double first_variation(const TwoSlopeProfile& profile, int interval_index, double s, double tol) {
  const ProblemParams& p = profile.params();
  if (interval_index < 0 || interval_index >= p.L) throw InvalidArgument("interval index out of range");
  const double right = profile.neg_interval_right_endpoints()[interval_index];
  const double avg = frac_laplacian_avg(profile, right - p.delta, right, KernelExponent(s), tol);
  return (p.Lambda + 1) / p.T * avg;
}

std::vector<double> gap_gradient(const TwoSlopeProfile& profile, double s, double tol) {
  const int L = profile.params().L;
  std::vector<double> fv(L);
  parallel_for(static_cast<std::size_t>(L), [&](std::size_t i) { fv[i] = first_variation(profile, static_cast<int>(i), s, tol); });
  // Shifting interval i right grows gap i-1 and shrinks gap i, so
  // fv_i = G_{i-1} - G_i; fix G_0 = 0 and remove the normal component.
  std::vector<double> G(L, 0.0);
  for (int i = 1; i < L; ++i) G[i] = G[i - 1] - fv[i];
  const double mean = std::accumulate(G.begin(), G.end(), 0.0) / L;
  for (double& x : G) x -= mean;
  return G;
}

double periodicity_residual(const GapConfiguration& g, const ProblemParams& params) {
  double r = 0;
  for (double x : g.gaps) r = std::max(r, std::abs(x - params.rise()));
  return r;
}

namespace {

double sup_norm(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  KahanSum sum;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum.value();
}

std::vector<double> projected_step(const std::vector<double>& g, const std::vector<double>& grad, double t,
                                   double total) {
  std::vector<double> y(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) y[i] = g[i] - t * grad[i];
  return project_to_simplex(y, total);
}

GapConfiguration equal_gaps(const ProblemParams& params) {
  return GapConfiguration{std::vector<double>(params.L, params.rise())};
}

// Strictly better energy, or a tie broken by the smaller gap vector.
bool better(double e, const std::vector<double>& g, double best_e, const std::vector<double>& best_g) {
  const double eps = 1e-12 * std::max(1.0, std::abs(best_e));
  if (e < best_e - eps) return true;
  if (e > best_e + eps) return false;
  return std::lexicographical_compare(g.begin(), g.end(), best_g.begin(), best_g.end());
}

struct StartResult {
  std::vector<double> gaps;
  EnergyResult energy;
  int iterations = 0;
  bool converged = false;
  std::vector<TraceRow> trace;
};

StartResult descend(const ProblemParams& params, double s, const DescentOptions& opts, int start) {
  const double total = params.L * params.rise();
  SplitMix64 rng = SplitMix64(opts.rng_seed).fork(static_cast<std::uint64_t>(start));
  std::vector<double> g = random_gaps(rng, params).gaps;

  auto eval = [&](const std::vector<double>& x) { return energy(from_gaps({x}, params), s, opts.energy_tol); };

  StartResult out;
  EnergyResult E = eval(g);
  std::vector<double> grad = gap_gradient(from_gaps({g}, params), s, opts.energy_tol);
  std::vector<double> prev_g, prev_grad;
  double t = opts.step_init;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    out.trace.push_back({start, iter, E.value, periodicity_residual({g}, params)});
    const std::vector<double> trial = projected_step(g, grad, 1.0, total);
    std::vector<double> pg(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) pg[i] = g[i] - trial[i];
    out.iterations = iter;
    if (sup_norm(pg) <= opts.grad_tol) {
      out.converged = true;
      break;
    }
    if (!prev_g.empty()) {
      // Barzilai-Borwein step from the last accepted move
      std::vector<double> ds(g.size()), dy(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        ds[i] = g[i] - prev_g[i];
        dy[i] = grad[i] - prev_grad[i];
      }
      const double sy = dot(ds, dy);
      t = sy > 0 ? std::clamp(dot(ds, ds) / sy, 1e-8, 1e8) : opts.step_init;
    }
    // Armijo with an allowance for rounding in the energy itself.
    const double noise = 1e-14 * std::abs(E.value);
    bool accepted = false;
    std::vector<double> next;
    EnergyResult E_next;
    for (int k = 0; k < 200 && t > 1e-300; ++k, t *= opts.backtrack_ratio) {
      next = projected_step(g, grad, t, total);
      std::vector<double> d(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) d[i] = next[i] - g[i];
      E_next = eval(next);
      if (E_next.value <= E.value + 1e-4 * dot(grad, d) + noise) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    prev_g = g;
    prev_grad = grad;
    g = next;
    E = E_next;
    grad = gap_gradient(from_gaps({g}, params), s, opts.energy_tol);
  }
  out.gaps = g;
  out.energy = E;
  return out;
}

void check_grid(const ProblemParams& params, int grid_n) {
  if (params.L != 2 && params.L != 3) throw InvalidArgument("brute force supports L = 2 or 3 only");
  const int limit = params.L == 2 ? 200 : 60;
  if (grid_n < 1 || grid_n > limit) throw InvalidArgument("grid_n out of range for this L");
}

}  // namespace

std::vector<GapConfiguration> simplex_grid(const ProblemParams& params, int grid_n) {
  check_grid(params, grid_n);
  const double total = params.L * params.rise();
  const double h = total / grid_n;
  std::vector<GapConfiguration> out;
  if (params.L == 2) {
    for (int i = 0; i <= grid_n; ++i) out.push_back({{i * h, total - i * h}});
  } else {
    for (int i = 0; i <= grid_n; ++i)
      for (int j = 0; i + j <= grid_n; ++j) out.push_back({{i * h, j * h, total - (i + j) * h}});
  }
  // exact equal-gap point where the grid contains it
  for (GapConfiguration& g : out) {
    bool equal = true;
    for (double x : g.gaps) equal = equal && std::abs(x - params.rise()) <= 1e-9 * h;
    if (equal) g = equal_gaps(params);
    for (double& x : g.gaps) x = std::max(0.0, x);
  }
  return out;
}

MinimizeReport minimize_gaps(const ProblemParams& params, double s, const DescentOptions& opts,
                             std::vector<TraceRow>* trace) {
  opts.validate();
  MinimizeReport report;
  if (params.L == 1) {
    report.best_gaps = equal_gaps(params);
    report.best_energy = energy(build_canonical(params), s, opts.energy_tol);
    report.converged = true;
    report.periodicity_residual = 0;
    if (trace) trace->push_back({0, 0, report.best_energy.value, 0.0});
    return report;
  }
  std::vector<StartResult> runs(opts.multistart_count);
  parallel_for(runs.size(), [&](std::size_t m) { runs[m] = descend(params, s, opts, static_cast<int>(m)); });
  std::size_t best = 0;
  for (std::size_t m = 1; m < runs.size(); ++m)
    if (better(runs[m].energy.value, runs[m].gaps, runs[best].energy.value, runs[best].gaps)) best = m;
  if (trace)
    for (const StartResult& r : runs) trace->insert(trace->end(), r.trace.begin(), r.trace.end());
  report.best_gaps = {runs[best].gaps};
  report.best_energy = runs[best].energy;
  report.iterations = runs[best].iterations;
  report.converged = runs[best].converged;
  report.periodicity_residual = periodicity_residual(report.best_gaps, params);
  return report;
}

MinimizeReport brute_force(const ProblemParams& params, double s, int grid_n, double energy_tol) {
  const std::vector<GapConfiguration> grid = simplex_grid(params, grid_n);
  std::vector<EnergyResult> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { values[i] = energy(from_gaps(grid[i], params), s, energy_tol); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (better(values[i].value, grid[i].gaps, values[best].value, grid[best].gaps)) best = i;
  MinimizeReport report;
  report.best_gaps = grid[best];
  report.best_energy = values[best];
  report.iterations = static_cast<int>(grid.size());
  report.converged = true;
  report.periodicity_residual = periodicity_residual(grid[best], params);
  return report;
}

MinimizeReport verify_s0_minimizer(const ProblemParams& params, int grid_n) {
  const std::vector<GapConfiguration> grid = simplex_grid(params, grid_n);
  std::vector<double> values(grid.size()), offsets(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const TwoSlopeProfile u = from_gaps(grid[i], params);
    offsets[i] = best_offset(u);
    values[i] = energy_s0(u, offsets[i]);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (better(values[i], grid[i].gaps, values[best], grid[best].gaps)) best = i;

  const TwoSlopeProfile u = from_gaps(grid[best], params);
  const double o = offsets[best];
  double antisym = 0;
  for (double right : u.neg_interval_right_endpoints())
    antisym = std::max(antisym, std::abs((u.evaluate(right) + o) + (u.evaluate(right - params.delta) + o)));

  MinimizeReport report;
  report.best_gaps = grid[best];
  report.best_energy.value = values[best];
  report.best_energy.tail_bound = 0;
  report.best_energy.periods_summed = 0;
  report.iterations = static_cast<int>(grid.size());
  report.converged = true;
  report.periodicity_residual = periodicity_residual(grid[best], params);
  report.best_offset = o;
  report.endpoint_antisymmetry = antisym;
  return report;
}

}  // namespace twoslope
