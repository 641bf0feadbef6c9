#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "twoslope/numeric.hpp"
#include "twoslope/parallel.hpp"
#include "twoslope/rng.hpp"

using namespace twoslope;

TEST(KahanSum, RecoversCancelledLowBits) {
  KahanSum s;
  s += 1e16;
  s += 1.0;
  s += -1e16;
  EXPECT_EQ(s.value(), 1.0);
}

TEST(HurwitzZeta, MatchesBaselAndDirectSum) {
  EXPECT_NEAR(hurwitz_zeta(2, 1), std::numbers::pi * std::numbers::pi / 6, 1e-15);
  // direct partial sum plus Euler-Maclaurin tail
  const double x = 3.5, q = 2.25;
  double sum = 0;
  const int N = 20000;
  for (int j = 0; j < N; ++j) sum += std::pow(q + j, -x);
  const double a = q + N;
  sum += std::pow(a, 1 - x) / (x - 1) + 0.5 * std::pow(a, -x);
  EXPECT_NEAR(hurwitz_zeta(x, q), sum, 1e-14 * sum);
}

TEST(Binomial, KnownValues) {
  for (int n = 0; n < 10; ++n) EXPECT_DOUBLE_EQ(binomial(-1, n), n % 2 ? -1.0 : 1.0);
  EXPECT_DOUBLE_EQ(binomial(0.5, 2), -0.125);
  EXPECT_DOUBLE_EQ(binomial(5, 2), 10.0);
}

TEST(GaussLegendre, ExactForPolynomials) {
  for (int n : {1, 3, 8, 21}) {
    const GaussRule& r = gauss_legendre(n);
    for (int deg = 0; deg < 2 * n; ++deg) {
      double q = 0;
      for (int i = 0; i < n; ++i) q += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      EXPECT_NEAR(q, exact, 1e-14) << "n=" << n << " deg=" << deg;
    }
  }
}

TEST(ProjectToSimplex, FeasibleAndSatisfiesKkt) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-2, 2);
    const double total = rng.uniform(0.1, 3);
    const std::vector<double> g = project_to_simplex(v, total);
    EXPECT_NEAR(std::accumulate(g.begin(), g.end(), 0.0), total, 1e-13);
    // g_i = max(v_i - tau, 0) for a common tau
    double tau = NAN;
    for (int i = 0; i < n; ++i)
      if (g[i] > 0) tau = v[i] - g[i];
    ASSERT_FALSE(std::isnan(tau));
    for (int i = 0; i < n; ++i) {
      EXPECT_GE(g[i], 0.0);
      EXPECT_NEAR(g[i], std::max(v[i] - tau, 0.0), 1e-13);
    }
  }
}

TEST(ProjectToSimplex, FixedPointInside) {
  const std::vector<double> v{0.25, 0.5, 0.25};
  EXPECT_EQ(project_to_simplex(v, 1.0), v);
}

TEST(SplitMix64, ReferenceStream) {
  SplitMix64 r(0);
  EXPECT_EQ(r.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(r.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(r.next(), 0x06c45d188009454fULL);
}

TEST(SplitMix64, CounterAddressable) {
  SplitMix64 r(42);
  for (int i = 0; i < 5; ++i) r.next();
  EXPECT_EQ(r.next(), SplitMix64::at(42, 5));
  EXPECT_NE(r.fork(1).next(), r.fork(2).next());
  EXPECT_EQ(r.fork(3).next(), SplitMix64(42).fork(3).next());
}

TEST(ParallelFor, IndependentOfThreadCount) {
  std::vector<double> a(1000), b(1000);
  set_max_threads(1);
  parallel_for(a.size(), [&](std::size_t i) { a[i] = std::sin(double(i)); });
  set_max_threads(4);
  parallel_for(b.size(), [&](std::size_t i) { b[i] = std::sin(double(i)); });
  set_max_threads(1);
  EXPECT_EQ(a, b);
}

TEST(ParallelFor, RethrowsTaskException) {
  set_max_threads(3);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  set_max_threads(1);
}
