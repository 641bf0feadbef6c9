#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "twoslope/errors.hpp"
#include "twoslope/kernel.hpp"
#include "twoslope/rng.hpp"
#include "twoslope/sampling.hpp"

using namespace twoslope;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(SelfEnergy, MatchesElementaryIntegral) {
  // int_0^l int_0^l m^2 |x-y|^{1-2s} = 2 m^2 l^{3-2s} / ((2-2s)(3-2s))
  for (double s : {0.1, 0.3, 0.5, 0.75, 0.9})
    for (double l : {1e-3, 0.7, 5.0}) {
      const double m = -2.5;
      const double exact = 2 * m * m * std::pow(l, 3 - 2 * s) / ((2 - 2 * s) * (3 - 2 * s));
      EXPECT_LT(rel(self_segment_energy(l, m, KernelExponent(s)), exact), 1e-13) << s << ' ' << l;
    }
}

TEST(PairEnergy, ConstantSegmentsElementary) {
  // constants ca on [0,1], cb on [1+g, 2+g]: (ca-cb)^2 [F(g) - 2F(g+1) + F(g+2)],
  // F'' = r^{-1-2s}
  const double g = 0.3, ca = 0.4, cb = -1.1;
  for (double s : {0.2, 0.45, 0.7}) {
    const double p = 1 + 2 * s;
    auto F = [&](double r) { return std::pow(r, 2 - p) / ((1 - p) * (2 - p)); };
    const double exact = (ca - cb) * (ca - cb) * (F(g) - 2 * F(g + 1) + F(g + 2));
    const double got = segment_pair_energy(Segment(0, 1, ca, 0), Segment(1 + g, 2 + g, cb, 0), KernelExponent(s));
    EXPECT_LT(rel(got, exact), 1e-12) << s;
  }
}

TEST(PairEnergy, AgreesWithQuadratureOracle) {
  SplitMix64 rng(2024);
  for (double s : {0.3, 0.5, 0.7, 0.5 + 1e-7}) {
    const KernelExponent ks(s);
    for (int i = 0; i < 25; ++i) {
      const auto [a, b] = random_segment_pair(rng);
      EXPECT_LT(rel(segment_pair_energy(a, b, ks), quadrature_oracle(a, b, ks, 1e-11)), 1e-9) << s << ' ' << i;
    }
  }
}

TEST(PairEnergy, SymmetricAndInvariant) {
  const KernelExponent ks(0.6);
  const Segment a(0, 0.8, 0.3, 1.5), b(0.8, 1.1, a.value_at_hi(), -4);
  const double e = segment_pair_energy(a, b, ks);
  EXPECT_LT(rel(segment_pair_energy(b, a, ks), e), 1e-14);
  // translation and common vertical shift
  const Segment a2(a.lo + 3.25, a.hi + 3.25, a.value_at_lo + 7, a.slope);
  const Segment b2(b.lo + 3.25, b.hi + 3.25, b.value_at_lo + 7, b.slope);
  EXPECT_LT(rel(segment_pair_energy(a2, b2, ks), e), 1e-12);
}

TEST(PairEnergy, Homogeneity) {
  // x -> lambda x with values fixed scales the energy by lambda^{1-2s}
  const double lambda = 3.7;
  for (double s : {0.3, 0.5, 0.8}) {
    const KernelExponent ks(s);
    const Segment a(0, 0.5, 0, 2), b(0.9, 1.4, -0.2, -1);
    const Segment A(0, 0.5 * lambda, 0, 2 / lambda), B(0.9 * lambda, 1.4 * lambda, -0.2, -1 / lambda);
    EXPECT_LT(rel(segment_pair_energy(A, B, ks), std::pow(lambda, 1 - 2 * s) * segment_pair_energy(a, b, ks)), 1e-12);
  }
}

TEST(PairEnergy, ContinuousThroughHalf) {
  const Segment a(0, 1, 0, 1), b(1, 1.5, 1, -2);
  const double mid = segment_pair_energy(a, b, KernelExponent(0.5));
  for (double ds : {-1e-7, -1e-9, 1e-9, 1e-7}) {
    const double e = segment_pair_energy(a, b, KernelExponent(0.5 + ds));
    EXPECT_LT(rel(e, mid), 20 * std::abs(ds)) << ds;
  }
}

TEST(PairEnergy, RejectsBadGeometry) {
  const KernelExponent ks(0.4);
  EXPECT_THROW(segment_pair_energy(Segment(0, 1, 0, 1), Segment(0.5, 2, 0, 1), ks), InvalidArgument);
  EXPECT_THROW(KernelExponent(1.0), InvalidArgument);
  EXPECT_THROW(Segment(1, 0, 0, 1), InvalidArgument);
}

TEST(PairCross, AntisymmetricAndMatchesQuadrature) {
  const double s = 0.35;
  const KernelExponent ks(s);
  const Segment a(0, 1, 0.2, 1), b(1.4, 2, -0.5, -3);
  const double c = segment_pair_cross(a, b, ks);
  EXPECT_LT(rel(segment_pair_cross(b, a, ks), -c), 1e-14);
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double q = GK::integrate(
      [&](double x) {
        return GK::integrate([&](double y) { return (a.value_at(x) - b.value_at(y)) * std::pow(y - x, -1 - 2 * s); },
                             b.lo, b.hi, 10, 1e-14);
      },
      a.lo, a.hi, 10, 1e-13);
  EXPECT_LT(rel(c, q), 1e-10);
}

TEST(PointIntegral, MatchesQuadrature) {
  const Segment b(0.5, 1.7, 0.3, -0.8);
  for (double s : {0.25, 0.5, 0.9}) {
    for (double x : {-0.4, 0.45, 1.75, 4.0}) {
      using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
      const double v = 0.9;
      const double q =
          GK::integrate([&](double y) { return (v - b.value_at(y)) * std::pow(std::abs(x - y), -1 - 2 * s); }, b.lo,
                        b.hi, 15, 1e-14);
      EXPECT_LT(rel(segment_point_integral(x, v, b, KernelExponent(s)), q), 1e-10) << s << ' ' << x;
    }
  }
  EXPECT_THROW(segment_point_integral(1.0, 0.0, b, KernelExponent(0.5)), InvalidArgument);
}
