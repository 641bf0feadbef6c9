#include "lattice.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "twoslope/errors.hpp"
#include "twoslope/numeric.hpp"
#include "twoslope/parallel.hpp"

namespace twoslope::detail {

namespace {

constexpr int kMoments = kTailOrder / 2;          // even orders 0, 2, ..., M-2
constexpr int kMomentNodes = kTailOrder / 2 + 1;  // exact through degree M+1

using MomentVector = std::array<double, kMoments>;

// Adds w * f * z^{2j} into m[j].
void add_even_powers(MomentVector& m, double w, double f, double z) {
  const double z2 = z * z;
  double zp = 1;
  for (int j = 0; j < kMoments; ++j) {
    m[j] += w * f * zp;
    zp *= z2;
  }
}

// Double moments int_rows int_period D^power ((y - x)/T)^n.
MomentVector double_moments(std::span<const Segment> rows, std::span<const Segment> period, double T, int power) {
  const GaussRule& rule = gauss_legendre(kMomentNodes);
  MomentVector m{};
  for (const Segment& a : rows) {
    const double ha = a.length() / 2;
    for (const Segment& b : period) {
      const double hb = b.length() / 2;
      MomentVector local{};
      for (int i = 0; i < kMomentNodes; ++i) {
        const double x = a.lo + ha * (1 + rule.nodes[i]);
        const double ux = a.value_at(x);
        for (int j = 0; j < kMomentNodes; ++j) {
          const double y = b.lo + hb * (1 + rule.nodes[j]);
          const double D = ux - b.value_at(y);
          add_even_powers(local, rule.weights[i] * rule.weights[j], power == 1 ? D : D * D, (y - x) / T);
        }
      }
      for (int n = 0; n < kMoments; ++n) m[n] += local[n] * ha * hb;
    }
  }
  return m;
}

double series_value(const MomentVector& m, double p, double T, long K) {
  KahanSum sum;
  for (int j = 0; j < kMoments; ++j) {
    const int n = 2 * j;
    sum += 2 * binomial(-p, n) * hurwitz_zeta(p + n, static_cast<double>(K + 1)) * m[j];
  }
  return sum.value() * std::pow(T, -p);
}

// |binom(-p, M)| ((K+1)/K)^{p+M} zeta(p+M, K+1): the Lagrange remainder factor
// for |d/(kT)| < 1/k, summed over k > K.
double remainder_factor(double p, long K, double shrink) {
  const double M = kTailOrder;
  const double Kd = static_cast<double>(K);
  const double slack = (shrink == 1.0) ? (Kd + 1) / Kd : 1.0 / (1.0 - 1.0 / (2 * Kd + 2));
  return std::abs(binomial(-p, kTailOrder)) * std::pow(shrink, M) * std::pow(slack, p + M) *
         hurwitz_zeta(p + M, Kd + 1);
}

void check_K(long K) {
  if (K < kMinPeriods) throw InvalidArgument("lattice tail needs K >= 2");
}

double total_length(std::span<const Segment> segs) {
  KahanSum sum;
  for (const Segment& s : segs) sum += s.length();
  return sum.value();
}

}  // namespace

TailEstimate energy_tail(std::span<const Segment> rows, std::span<const Segment> period, double T, double osc,
                         const KernelExponent& s, long K, TailMode mode) {
  check_K(K);
  const double p = s.power();
  const double area = total_length(rows) * T;
  if (mode == TailMode::crude) {
    // every far pair is bounded by osc^2 ((|k|-1) T)^{-p}, summed over both signs
    const double Kd = static_cast<double>(K);
    const double sum_j = std::pow(Kd, -p) + std::pow(Kd, -2 * s.s()) / (2 * s.s());
    return TailEstimate{0.0, 4 * osc * osc * area * std::pow(T, -p) * sum_j};
  }
  const MomentVector m = double_moments(rows, period, T, 2);
  TailEstimate t;
  t.value = series_value(m, p, T, K);
  t.bound = 2 * osc * osc * area * std::pow(T, -p) * remainder_factor(p, K, 1.0);
  return t;
}

TailEstimate cross_tail(std::span<const Segment> rows, std::span<const Segment> period, double T, double osc,
                        const KernelExponent& s, long K) {
  check_K(K);
  const double p = s.power();
  const MomentVector m = double_moments(rows, period, T, 1);
  TailEstimate t;
  t.value = series_value(m, p, T, K);
  t.bound = 2 * osc * total_length(rows) * T * std::pow(T, -p) * remainder_factor(p, K, 1.0);
  return t;
}

TailEstimate point_tail(double x, double ux, std::span<const Segment> frame, double T, double osc,
                        const KernelExponent& s, long K) {
  check_K(K);
  const double p = s.power();
  const GaussRule& rule = gauss_legendre(kMomentNodes);
  MomentVector m{};
  for (const Segment& b : frame) {
    const double hb = b.length() / 2;
    MomentVector local{};
    for (int j = 0; j < kMomentNodes; ++j) {
      const double y = b.lo + hb * (1 + rule.nodes[j]);
      add_even_powers(local, rule.weights[j], ux - b.value_at(y), (y - x) / T);
    }
    for (int n = 0; n < kMoments; ++n) m[n] += local[n] * hb;
  }
  TailEstimate t;
  t.value = series_value(m, p, T, K);
  // |d| <= T/2 here, hence the extra 2^{-M}
  t.bound = 2 * osc * T * std::pow(T, -p) * remainder_factor(p, K, 0.5);
  return t;
}

double ordered_k_sum(long K, const std::function<double(long)>& term) {
  const std::size_t count = static_cast<std::size_t>(2 * K + 1);
  std::vector<double> parts(count);
  // slot 0 -> k = 0, slot 2j-1 -> k = -j, slot 2j -> k = +j
  parallel_for(count, [&](std::size_t i) {
    const long j = static_cast<long>((i + 1) / 2);
    const long k = (i == 0) ? 0 : ((i % 2 == 1) ? -j : j);
    parts[i] = term(k);
  });
  KahanSum sum;
  for (double v : parts) sum += v;
  return sum.value();
}

}  // namespace twoslope::detail
