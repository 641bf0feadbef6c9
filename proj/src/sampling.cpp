#include "twoslope/sampling.hpp"

#include <cmath>

#include "twoslope/numeric.hpp"

namespace twoslope {

std::pair<Segment, Segment> random_segment_pair(SplitMix64& rng) {
  const double kind = rng.uniform();
  const double la = std::exp(rng.uniform(-5, 1));
  const double va = rng.uniform(-1, 1), sa = rng.uniform(-3, 3);
  const Segment a(0.0, la, va, sa);
  if (kind < 0.1) return {a, a};
  const double lb = std::exp(rng.uniform(-5, 1)), sb = rng.uniform(-3, 3);
  if (kind < 0.4) return {a, Segment(la, la + lb, a.value_at_hi(), sb)};
  const double gap = std::exp(rng.uniform(-6, 1));
  return {a, Segment(la + gap, la + gap + lb, rng.uniform(-1, 1), sb)};
}

GapConfiguration random_gaps(SplitMix64& rng, const ProblemParams& params) {
  const double total = params.L * params.rise();
  std::vector<double> g(params.L);
  double sum = 0;
  for (double& x : g) {
    x = -std::log1p(-rng.uniform());
    sum += x;
  }
  for (double& x : g) x *= total / sum;
  return {project_to_simplex(g, total)};
}

}  // namespace twoslope
