#include "twoslope/numeric.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "twoslope/errors.hpp"

namespace twoslope {

void KahanSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

namespace {

constexpr int kMaxGaussNodes = 64;

GaussRule build_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    const long double w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = static_cast<double>(-x);
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.weights[i] = rule.weights[n - 1 - i] = static_cast<double>(w);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static const std::vector<GaussRule> rules = [] {
    std::vector<GaussRule> r(kMaxGaussNodes + 1);
    r[1] = GaussRule{{0.0}, {2.0}};
    for (int k = 2; k <= kMaxGaussNodes; ++k) r[k] = build_rule(k);
    return r;
  }();
  if (n < 1 || n > kMaxGaussNodes) throw InvalidArgument("gauss_legendre: unsupported node count");
  return rules[n];
}

int gauss_nodes_for(double dist, double len) {
  if (!(len > 0)) return 1;
  const double x0 = 1.0 + 2.0 * dist / len;
  const double rho = x0 + std::sqrt(std::max(0.0, x0 * x0 - 1.0));
  if (!(rho > 1.0 + 1e-12)) return kMaxGaussNodes;
  const double n = 18.0 * std::numbers::ln10 / (2.0 * std::log(rho)) + 2.0;
  return std::clamp(static_cast<int>(std::ceil(n)), 2, kMaxGaussNodes);
}

double hurwitz_zeta(double x, double q) {
  if (!(x > 1.0) || !(q > 0.0)) throw InvalidArgument("hurwitz_zeta: need x > 1, q > 0");
  // GSL's default handler aborts; statuses are checked here instead. Set once,
  // since swapping the global handler per call would race across threads.
  static const bool handler_off = (gsl_set_error_handler_off(), true);
  (void)handler_off;
  gsl_sf_result res;
  const int status = gsl_sf_hzeta_e(x, q, &res);
  if (status == GSL_EUNDRFLW) return 0.0;
  if (status != GSL_SUCCESS) throw InvalidArgument("hurwitz_zeta: evaluation failed");
  return res.val;
}

double binomial(double a, int n) {
  double b = 1.0;
  for (int k = 0; k < n; ++k) b *= (a - k) / (k + 1);
  return b;
}

std::vector<double> project_to_simplex(std::span<const double> v, double total) {
  if (v.empty()) return {};
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double t = (cumulative - total) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

}  // namespace twoslope
