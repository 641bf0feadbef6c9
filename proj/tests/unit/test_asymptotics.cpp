#include <gtest/gtest.h>

#include <cmath>

#include "twoslope/asymptotics.hpp"
#include "twoslope/errors.hpp"

using namespace twoslope;

TEST(Sigma, Values) {
  EXPECT_NEAR(sigma(0.5, 1e-3), 6.907755278982137, 1e-12);
  EXPECT_NEAR(sigma(0.75, 1e-4), 100 / 0.28125, 1e-9);
  EXPECT_THROW(sigma(0.4, 0.1), InvalidArgument);
  EXPECT_THROW(sigma(0.5 + 1e-8, 0.1), InvalidArgument);
  EXPECT_THROW(sigma(0.7, 1.0), InvalidArgument);
  EXPECT_THROW(sigma(0.7, 0.0), InvalidArgument);
}

TEST(Mantissa, ClosedFormMatchesQuadrature) {
  const Segment w(0.0, 1.0, 0.0, 1.0);
  EnergyOptions o;
  o.method = EnergyMethod::oracle;
  for (double s : {0.1, 0.25, 0.4}) {
    const double a = mantissa_constant(s, 1e-12).value;
    const double b = periodic_energy(std::span<const Segment>(&w, 1), 1.0, s, 1e-12, true, o).value;
    EXPECT_NEAR(a, b, 1e-6 * b) << s;
  }
  EXPECT_THROW(mantissa_constant(0.5, 1e-10), InvalidArgument);
}

TEST(Mantissa, IsTheThinCoreLimit) {
  // Lambda delta = 1 sawtooth with a steep drop of width delta
  const double s = 0.25, d = 1e-4;
  const double m = mantissa_constant(s, 1e-12).value;
  const double e = energy(build_canonical(ProblemParams(s, 1 / d, d, 1)), s, 1e-12).value;
  EXPECT_NEAR(e, m, 0.02 * m);
}

TEST(Breakdown, LimitsAtSmallDelta) {
  const double s = 0.75, d = 1e-6;
  const EnergyBreakdown b = energy_breakdown(s, d, 1e-14);
  const BreakdownLimits lim = breakdown_limits(s);
  const double scale = std::pow(d, 1 - 2 * s);
  EXPECT_NEAR(b.terms[0] / scale, lim.I1, 0.01 * lim.I1);
  EXPECT_NEAR(b.terms[1] / scale, lim.I2, 0.05 * lim.I2);
  EXPECT_NEAR(b.terms[7] / scale, lim.I8, 0.05 * lim.I8);
  EXPECT_THROW(breakdown_limits(0.5), InvalidArgument);
}

TEST(Breakdown, I8Sandwich) {
  for (double s : {0.55, 0.75, 0.9})
    for (double d : {1e-2, 1e-4, 1e-6}) {
      const double i8 = energy_breakdown(s, d, 1e-14).terms[7];
      EXPECT_LE(i8_lower_bound(s, d), i8) << s << ' ' << d;
      EXPECT_LE(i8, i8_upper_bound(s, d)) << s << ' ' << d;
    }
  // continuous through s = 1/2
  EXPECT_NEAR(i8_upper_bound(0.5, 1e-3), i8_upper_bound(0.5 + 1e-9, 1e-3), 1e-6);
  EXPECT_THROW(i8_lower_bound(0.75, 0.1, 0.5), InvalidArgument);
}

TEST(Breakdown, ConstantSum) {
  for (int i = 1; i < 50; ++i) EXPECT_LE(std::abs(constant_sum_residual(0.5 + i / 100.0)), 1e-12);
  EXPECT_THROW(constant_sum_residual(1.0), InvalidArgument);
}

TEST(Sweep, SortedAndConsistent) {
  const auto rows = ratio_sweep(0.5, {1e-3, 1e-1, 1e-2}, 1e-8);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(rows[0].delta, rows[1].delta);
  EXPECT_GT(rows[1].delta, rows[2].delta);
  for (const SweepRow& r : rows) {
    const double e = energy(build_canonical(ProblemParams(0.5, 1 / r.delta, r.delta, 1)), 0.5, 1e-10).value;
    EXPECT_NEAR(r.energy, e, 1e-8 * r.sigma);
    EXPECT_DOUBLE_EQ(r.ratio, r.energy / r.sigma);
  }
  EXPECT_THROW(ratio_sweep(0.5, {}, 1e-8), InvalidArgument);
}

TEST(Extremal, ExactValues) {
  const ExtremalReport r = extremal_limits({1e-1, 1e-3});
  for (const ExtremalRow& row : r.rows) {
    EXPECT_NEAR(row.energy_s0, 1.0 / 24, 1e-15);
    EXPECT_NEAR(row.delta_energy_s1, 0.5, 4e-16);
  }
}
