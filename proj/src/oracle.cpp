#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <vector>

#include "pair_geometry.hpp"
#include "twoslope/errors.hpp"
#include "twoslope/kernel.hpp"
#include "twoslope/numeric.hpp"

namespace twoslope {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
using TanhSinh = boost::math::quadrature::tanh_sinh<double>;

constexpr unsigned kMaxDepth = 15;
constexpr int kMaxGradedPieces = 60;
// Geometric levels before the last piece at an endpoint singularity is
// handed to tanh-sinh.
constexpr int kGeometricLevels = 12;

struct Accumulated {
  double value = 0;
  double error = 0;
  double l1 = 0;
};

struct Mesh {
  std::vector<double> pts;
  // the integrand may be singular at pts[0] itself
  bool singular_start = false;
};

// Integrates f over consecutive pieces [pts[i], pts[i+1]].
//
// Each piece is mapped onto [-1, 1] before calling into Boost: its recursive
// driver compares the unscaled local error estimate against a scaled
// tolerance, so short intervals would otherwise always refine to max depth.
template <class F>
Accumulated integrate_pieces(F&& f, const Mesh& mesh, double rel_tol) {
  thread_local TanhSinh tanh_sinh;
  const std::vector<double>& pts = mesh.pts;
  KahanSum sum;
  Accumulated acc;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    double err = 0, l1 = 0;
    if (i == 0 && mesh.singular_start) {
      // same story for tanh-sinh's error estimate: integrate over [0, 1]
      const double h = pts[1] - pts[0];
      auto unit = [&](double v) { return h * f(pts[0] + h * v); };
      sum += tanh_sinh.integrate(unit, 0.0, 1.0, rel_tol, &err, &l1);
    } else {
      const double mid = 0.5 * (pts[i] + pts[i + 1]), half = 0.5 * (pts[i + 1] - pts[i]);
      auto mapped = [&](double t) { return half * f(mid + half * t); };
      sum += GK::integrate(mapped, -1.0, 1.0, kMaxDepth, rel_tol, &err, &l1);
    }
    acc.error += err;
    acc.l1 += l1;
  }
  acc.value = sum.value();
  return acc;
}

// Breakpoints 0, d, 3d, 7d, ... (each piece as long as its distance to the
// singular point at -d), closed off at len. When d is negligible against len
// the singularity is treated as sitting at 0: a geometric mesh len * 2^-j
// whose innermost piece goes to tanh-sinh.
Mesh graded_from_zero(double d, double len) {
  Mesh mesh;
  mesh.pts.push_back(0.0);
  if (d > std::ldexp(len, -40)) {
    double next = d;
    while (next < len && static_cast<int>(mesh.pts.size()) < kMaxGradedPieces) {
      mesh.pts.push_back(next);
      next = 2 * next + d;
    }
    mesh.pts.push_back(len);
    return mesh;
  }
  for (int j = kGeometricLevels; j >= 0; --j) mesh.pts.push_back(std::ldexp(len, -j));
  mesh.singular_start = true;
  return mesh;
}

void require_converged(const Accumulated& acc, double rel_tol, const char* what) {
  const double target = rel_tol * std::max(std::abs(acc.value), 1e-300) + 1e-300;
  if (!(acc.error <= target) && !(acc.error <= rel_tol * acc.l1) ) {
    throw OracleFailure(std::string("quadrature oracle did not converge: ") + what);
  }
}

}  // namespace

double quadrature_oracle(const Segment& a, const Segment& b, const KernelExponent& s, double tol, bool allow_jump) {
  if (!(tol > 0)) throw InvalidArgument("quadrature_oracle: tol must be positive");
  const double p = s.power();
  const double inner_tol = tol * 0.1;

  if (a.lo == b.lo && a.hi == b.hi) {
    if (a.value_at_lo != b.value_at_lo || a.slope != b.slope)
      throw InvalidArgument("segment pair overlaps with different affine maps");
    // Diagonal split: 2 int_{x} int_{y > x}, inner in t = y - x.
    const double len = a.length();
    const double slope2 = a.slope * a.slope;
    if (slope2 == 0) return 0.0;
    bool inner_ok = true;
    auto inner = [&](double x) {
      const double w = len - x;
      if (!(w > 0)) return 0.0;
      auto f = [&](double t) { return t > 0 ? slope2 * std::pow(t, 2 - p) : 0.0; };
      const Accumulated r = integrate_pieces(f, graded_from_zero(0.0, w), inner_tol);
      if (!(r.error <= inner_tol * std::abs(r.value) + 1e-300)) inner_ok = false;
      return r.value;
    };
    // grade toward x = len, where the inner range collapses
    auto outer_f = [&](double u) { return inner(len - u); };
    const Accumulated r = integrate_pieces(outer_f, graded_from_zero(0.0, len), tol * 0.5);
    if (!inner_ok) throw OracleFailure("quadrature oracle: inner integral did not converge");
    require_converged(r, tol, "self pair");
    return 2 * r.value;
  }

  const detail::PairOrder po = detail::order_pair(a, b, allow_jump, s);
  const double A = static_cast<double>(po.geometry.A);
  const double B = static_cast<double>(po.geometry.B);
  const double g = static_cast<double>(po.geometry.g);
  const double J = static_cast<double>(po.geometry.J);
  const double sigma = static_cast<double>(po.geometry.sigma);
  const double tau = static_cast<double>(po.geometry.tau);
  if (J == 0 && sigma == 0 && tau == 0) return 0.0;

  bool inner_ok = true;
  auto inner = [&](double xi) {
    const double d = g + xi;
    if (!(d > 0)) return 0.0;
    const double base = J - sigma * xi;
    Accumulated r;
    if (d >= B) {
      auto f = [&](double eta) {
        const double D = base - tau * eta;
        return D * D * std::pow(d + eta, -p);
      };
      r = integrate_pieces(f, Mesh{{0.0, B}, false}, inner_tol);
    } else {
      // Near field: integrate in t = log(d + eta) on unit pieces, which
      // resolves the kernel peak at eta = -d for any d > 0. The square is
      // taken after scaling so that tiny D and huge r^{-p} do not meet.
      auto f = [&](double t) {
        const double rr = std::exp(t);
        const double D = base - tau * (rr - d);
        const double q = D * std::pow(rr, 0.5 * (1 - p));
        return q * q;
      };
      Mesh mesh;
      const double t0 = std::log(d), t1 = std::log(d + B);
      for (double t = t0; t < t1; t += 1.0) mesh.pts.push_back(t);
      mesh.pts.push_back(t1);
      r = integrate_pieces(f, mesh, inner_tol);
    }
    if (!(r.error <= inner_tol * r.l1 + 1e-300)) inner_ok = false;
    return r.value;
  };
  const Accumulated r = integrate_pieces(inner, graded_from_zero(g, A), tol * 0.5);
  if (!inner_ok) throw OracleFailure("quadrature oracle: inner integral did not converge");
  require_converged(r, tol, "segment pair");
  return r.value;
}

}  // namespace twoslope
