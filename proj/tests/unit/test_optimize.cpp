#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twoslope/errors.hpp"
#include "twoslope/optimize.hpp"
#include "twoslope/parallel.hpp"
#include "twoslope/sampling.hpp"

using namespace twoslope;

namespace {

// energy after moving interval i right by h (gap i-1 grows, gap i shrinks)
double shifted_energy(const GapConfiguration& g, const ProblemParams& p, int i, double h, double s) {
  GapConfiguration m = g;
  const int L = p.L;
  m.gaps[(i + L - 1) % L] += h;
  m.gaps[i] -= h;
  return energy(from_gaps(m, p), s, 1e-15).value;
}

}  // namespace

TEST(FirstVariation, MatchesCentralDifferences) {
  const ProblemParams p(0.5, 5, 0.2, 2);
  SplitMix64 rng(99);
  for (double s : {0.3, 0.5, 0.7}) {
    GapConfiguration g;
    do g = random_gaps(rng, p);
    while (*std::min_element(g.gaps.begin(), g.gaps.end()) < 0.05);
    const TwoSlopeProfile u = from_gaps(g, p);
    for (int i = 0; i < 2; ++i) {
      const double h = 1e-5;
      const double fd = (shifted_energy(g, p, i, h, s) - shifted_energy(g, p, i, -h, s)) / (2 * h);
      const double fv = first_variation(u, i, s);
      EXPECT_LT(std::abs(fv - fd), 1e-4 * std::abs(fd)) << s << ' ' << i;
    }
  }
}

TEST(FirstVariation, CanonicalIsStationary) {
  for (double s : {0.25, 0.5, 0.75}) {
    const TwoSlopeProfile u = build_canonical(ProblemParams(s, 4, 0.25, 3));
    for (int i = 0; i < 3; ++i) EXPECT_LE(std::abs(first_variation(u, i, s)), 1e-8) << s << ' ' << i;
  }
  EXPECT_THROW(first_variation(build_canonical(ProblemParams(0.5, 1, 0.5, 1)), 1, 0.5), InvalidArgument);
}

TEST(FirstVariation, MirrorNegates) {
  // u -> -u(-x) maps the class to itself and interval (e - delta, e) to
  // (-e, -e + delta); a right shift of one is a left shift of the other.
  const ProblemParams p(0.5, 3, 0.2, 2);
  const TwoSlopeProfile u = from_gaps({{0.3, 0.9}}, p);
  std::vector<double> ends;
  for (double e : u.neg_interval_right_endpoints()) {
    double m = std::fmod(-e + p.delta + 2 * p.T, p.T);
    ends.push_back(m);
  }
  std::vector<double> sorted = ends;
  std::sort(sorted.begin(), sorted.end());
  const TwoSlopeProfile v(p, sorted, 0.0);
  for (int i = 0; i < 2; ++i) {
    const int j = static_cast<int>(std::find(sorted.begin(), sorted.end(), ends[i]) - sorted.begin());
    EXPECT_NEAR(first_variation(v, j, 0.6), -first_variation(u, i, 0.6), 1e-10);
  }
}

TEST(GapGradient, TangentToSimplex) {
  const ProblemParams p(0.4, 2, 0.3, 3);
  const std::vector<double> g = gap_gradient(from_gaps({{0.1, 0.5, 1.2}}, p), 0.4);
  EXPECT_NEAR(std::accumulate(g.begin(), g.end(), 0.0), 0.0, 1e-14);
}

TEST(Minimize, SingleIntervalIsTrivial) {
  const ProblemParams p(0.5, 2, 0.5, 1);
  const MinimizeReport r = minimize_gaps(p, 0.5, DescentOptions{});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.periodicity_residual, 0.0);
  EXPECT_EQ(r.iterations, 0);
}

TEST(Minimize, TwoIntervalsReachEqualGaps) {
  const ProblemParams p(0.5, 5, 0.2, 2);
  std::vector<TraceRow> trace;
  const MinimizeReport r = minimize_gaps(p, 0.5, DescentOptions{}, &trace);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.periodicity_residual, 1e-4 * p.T);
  // descent monotone up to the certification tolerance of each evaluation
  for (std::size_t i = 1; i < trace.size(); ++i)
    if (trace[i].start == trace[i - 1].start) EXPECT_LE(trace[i].energy, trace[i - 1].energy + 1e-11);
}

TEST(Minimize, DeterministicAcrossThreadCounts) {
  const ProblemParams p(0.3, 10, 0.1, 3);
  DescentOptions o;
  o.multistart_count = 4;
  set_max_threads(1);
  const MinimizeReport a = minimize_gaps(p, 0.3, o);
  set_max_threads(4);
  const MinimizeReport b = minimize_gaps(p, 0.3, o);
  set_max_threads(1);
  EXPECT_EQ(a.best_gaps.gaps, b.best_gaps.gaps);
  EXPECT_EQ(a.best_energy.value, b.best_energy.value);
}

TEST(Minimize, RejectsBadOptions) {
  DescentOptions o;
  o.backtrack_ratio = 1.0;
  EXPECT_THROW(minimize_gaps(ProblemParams(0.5, 1, 0.5, 2), 0.5, o), InvalidArgument);
}

TEST(BruteForce, ArgminIsEqualGapsAndBelowDescent) {
  const ProblemParams p(0.5, 5, 0.2, 2);
  const MinimizeReport b = brute_force(p, 0.5, 100);
  EXPECT_EQ(b.periodicity_residual, 0.0);
  const MinimizeReport d = minimize_gaps(p, 0.5, DescentOptions{});
  EXPECT_GE(b.best_energy.value, d.best_energy.value - 1e-8);
}

TEST(BruteForce, RotatedGridPointsHaveEqualEnergy) {
  const ProblemParams p(0.7, 10, 0.1, 3);
  const std::vector<GapConfiguration> grid = simplex_grid(p, 12);
  EXPECT_EQ(grid.size(), 13u * 14u / 2u);
  for (std::size_t i = 0; i < grid.size(); i += 7) {
    const auto& g = grid[i].gaps;
    const double e0 = energy(from_gaps(grid[i], p), 0.7, 1e-13).value;
    const double e1 = energy(from_gaps({{g[1], g[2], g[0]}}, p), 0.7, 1e-13).value;
    EXPECT_NEAR(e0, e1, 1e-10 * std::max(1.0, e0));
  }
}

TEST(BruteForce, RangeChecks) {
  EXPECT_THROW(brute_force(ProblemParams(0.5, 1, 0.5, 4), 0.5, 10), InvalidArgument);
  EXPECT_THROW(brute_force(ProblemParams(0.5, 1, 0.5, 2), 0.5, 201), InvalidArgument);
  EXPECT_THROW(brute_force(ProblemParams(0.5, 1, 0.5, 3), 0.5, 61), InvalidArgument);
}

TEST(VerifyS0, EqualGapsHalfRiseOffsetAntisymmetric) {
  const ProblemParams p(0, 1, 0.5, 2);
  const MinimizeReport r = verify_s0_minimizer(p, 100);
  EXPECT_EQ(r.periodicity_residual, 0.0);
  ASSERT_TRUE(r.best_offset && r.endpoint_antisymmetry);
  EXPECT_NEAR(*r.best_offset, -p.rise() / 2, 1e-15);
  EXPECT_LE(*r.endpoint_antisymmetry, 1e-15);
}
