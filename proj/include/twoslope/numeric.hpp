#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace twoslope {

/// Neumaier-compensated accumulator. Order of add() calls defines the result.
class KahanSum {
 public:
  void add(double x) noexcept;
  KahanSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Gauss-Legendre rule on [-1, 1]. Rules are computed once and cached.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

/// Number of Gauss-Legendre nodes needed on an interval of length `len` when
/// the nearest singularity of the integrand lies a distance `dist` beyond one
/// end. Targets a relative error around 1e-18 (Bernstein-ellipse estimate).
int gauss_nodes_for(double dist, double len);

/// Hurwitz zeta function sum_{j>=0} (q + j)^{-x}, x > 1, q > 0.
double hurwitz_zeta(double x, double q);

/// Generalized binomial coefficient binom(a, n).
double binomial(double a, int n);

/// Euclidean projection of `v` onto {g >= 0, sum g = total}.
std::vector<double> project_to_simplex(std::span<const double> v, double total);

}  // namespace twoslope
