#include <gtest/gtest.h>

#include <cmath>

#include "twoslope/energy.hpp"
#include "twoslope/errors.hpp"
#include "twoslope/numeric.hpp"
#include "twoslope/sampling.hpp"

using namespace twoslope;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// (1/2T) int_0^T f(u) by Gauss-Legendre on each affine piece
template <class F>
double period_average(const TwoSlopeProfile& u, F f) {
  const GaussRule& r = gauss_legendre(8);
  double sum = 0;
  for (const Segment& seg : u.period_segments()) {
    const double h = seg.length() / 2, c = seg.lo + h;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * h * f(seg.value_at(c + h * r.nodes[i]));
  }
  return sum / (2 * u.period());
}

}  // namespace

TEST(Energy, ClosedFormAgreesWithOracleAssembly) {
  const ProblemParams p(0.5, 3, 0.2, 2);
  const TwoSlopeProfile u = from_gaps({{0.2, 1.0}}, p);
  for (double s : {0.3, 0.5, 0.7}) {
    const EnergyResult a = energy(u, s, 1e-12);
    EnergyOptions o;
    o.method = EnergyMethod::oracle;
    o.oracle_tol = 1e-11;
    const EnergyResult b = energy(u, s, 1e-12, o);
    EXPECT_LT(rel(a.value, b.value), 1e-9) << s;
    EXPECT_LE(a.tail_bound, 1e-12);
    EXPECT_EQ(a.periods_summed % 2, 1);
    EXPECT_EQ(b.method, EnergyMethod::oracle);
  }
}

TEST(Energy, TranslationAndRotationInvariant) {
  const ProblemParams p(0.6, 2, 0.25, 3);
  const TwoSlopeProfile u = from_gaps({{0.1, 0.3, 1.1}}, p);
  const double e = energy(u, 0.6, 1e-13).value;
  EXPECT_LT(rel(energy(u.translated(0.123), 0.6, 1e-13).value, e), 1e-11);
  EXPECT_LT(rel(energy(from_gaps({{0.3, 1.1, 0.1}}, p), 0.6, 1e-13).value, e), 1e-11);
}

TEST(Energy, CrudeTailConsistentWithExpansion) {
  const TwoSlopeProfile u = build_canonical(ProblemParams(0.75, 2, 0.5, 1));
  const EnergyResult fine = energy(u, 0.75, 1e-13);
  EnergyOptions o;
  o.tail = TailMethod::crude;
  const EnergyResult crude = energy(u, 0.75, 1e-6, o);
  EXPECT_LE(std::abs(crude.value - fine.value), crude.tail_bound + fine.tail_bound);
  EXPECT_GT(crude.periods_summed, fine.periods_summed);
  // more periods than the budget allows
  EXPECT_THROW(energy(u, 0.75, 1e-300, o), CertificationError);
  EXPECT_GT(crude_periods_needed(1, 1, 0.5, 1e-8), crude_periods_needed(1, 1, 0.5, 1e-4));
}

TEST(Energy, RejectsBadInput) {
  const TwoSlopeProfile u = build_canonical(ProblemParams(0.5, 1, 0.5, 1));
  EXPECT_THROW(energy(u, 0.0, 1e-8), InvalidArgument);
  EXPECT_THROW(energy(u, 1.0, 1e-8), InvalidArgument);
  EXPECT_THROW(energy(u, 0.5, 0.0), InvalidArgument);
}

TEST(Breakdown, SumsToPeriodEnergyAndSymmetries) {
  for (double s : {0.55, 0.75})
    for (double d : {0.3, 1e-3}) {
      const EnergyBreakdown b = energy_breakdown(s, d, 1e-12);
      const double F = energy(build_canonical(ProblemParams(s, 1 / d, d, 1)), s, 1e-12).value;
      EXPECT_LT(rel(b.sum(), (1 + d) * F), 1e-9) << s << ' ' << d;
      const auto& I = b.terms;
      EXPECT_LT(rel(I[2], I[1]), 1e-13);
      EXPECT_LT(rel(I[4], I[1]), 1e-13);
      EXPECT_LT(rel(I[6], I[1]), 1e-13);
      EXPECT_LT(rel(I[8], I[7]), 1e-13);
      for (double t : I) EXPECT_GT(t, 0);
    }
}

TEST(ExtremalFunctionals, MatchDirectIntegration) {
  const ProblemParams p(0, 3, 0.2, 2);
  const TwoSlopeProfile u = from_gaps({{0.4, 0.8}}, p);
  const double o = 0.37;
  EXPECT_LT(rel(energy_s0(u, o), period_average(u, [&](double v) { return (v + o) * (v + o); })), 1e-13);
  // |u'|^2: slope -Lambda on 2 delta, slope 1 on the rest
  EXPECT_LT(rel(energy_s1(u), (9 * 0.4 + (p.T - 0.4)) / (2 * p.T)), 1e-14);
  const double best = best_offset(u);
  EXPECT_NEAR(best, -u.mean(), 1e-15);
  for (double h : {-1e-3, 1e-3}) EXPECT_GT(energy_s0(u, best + h), energy_s0(u, best));
}
