#include "twoslope/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "twoslope/errors.hpp"
#include "twoslope/numeric.hpp"
#include "pair_geometry.hpp"

namespace twoslope {

Segment::Segment(double lo_, double hi_, double value_at_lo_, double slope_)
    : lo(lo_), hi(hi_), value_at_lo(value_at_lo_), slope(slope_) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw InvalidArgument("Segment: need finite lo < hi");
  if (!std::isfinite(value_at_lo) || !std::isfinite(slope))
    throw InvalidArgument("Segment: affine map must be finite");
}

Segment Segment::restricted(double from, double to) const {
  return Segment(from, to, value_at(from), slope);
}

KernelExponent::KernelExponent(double s) : s_(s), near_half_(std::abs(2.0 * s - 1.0) < kBranchWindow) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("kernel exponent s must lie in (0, 1)");
}

namespace detail {

using real = long double;

real powm1_over(real r, real e) {
  if (r == 0) return e > 0 ? -1 / e : std::numeric_limits<real>::infinity();
  const real L = std::log(r);
  if (std::abs(e) < kBranchWindow) {
    const real x = e * L;
    return L * (1 + x / 2 + x * x / 6 + x * x * x / 24);
  }
  return std::expm1(e * L) / e;
}

real Potentials::operator()(int n, real r) const {
  switch (n) {
    case 1:
      return c * std::pow(r, e - 1);
    case 2:
      return c * powm1_over(r, e);
    case 3:
      if (r == 0) return 0;
      return c * r * (powm1_over(r, e) - 1) / (1 + e);
    case 4:
      if (r == 0) return 0;
      return c * r * r * (2 * powm1_over(r, e) - 3 - e) / (2 * (1 + e) * (2 + e));
    default:
      throw InvalidArgument("antiderivative order out of range");
  }
}

Potentials potentials_for(const KernelExponent& s) {
  return Potentials{-1.0L / (2.0L * s.s()), static_cast<real>(s.e0())};
}

namespace {

constexpr std::array<real, 5> kFactorial{1, 1, 2, 6, 24};

real falling(int n, int m) { return kFactorial[n] / kFactorial[n - m]; }

real sign(int m) { return (m % 2 == 0) ? 1 : -1; }

}  // namespace

real rect_monomial(int i, int j, real A, real B, real g, const Potentials& K) {
  struct Term {
    real coef;
    int order;
    real shift;
  };
  std::array<Term, 4> terms{};
  int count = 0;
  // Integration by parts in eta, then in xi.
  for (int m = 0; m <= j; ++m) terms[count++] = {sign(m) * falling(j, m) * std::pow(B, j - m), m + 1, B};
  terms[count++] = {-sign(j) * kFactorial[j], j + 1, 0};

  real sum = 0;
  for (int t = 0; t < count; ++t) {
    const Term& term = terms[t];
    for (int m = 0; m <= i; ++m)
      sum += term.coef * sign(m) * falling(i, m) * std::pow(A, i - m) * K(term.order + m + 1, g + term.shift + A);
    sum += term.coef * (-sign(i)) * kFactorial[i] * K(term.order + i + 1, g + term.shift);
  }
  return sum;
}

real rect_closed_form(int power, const RectGeometry& G, const Potentials& K) {
  // D = J - sigma xi - tau eta expanded into monomials.
  struct Coef {
    int i, j;
    real c;
  };
  std::array<Coef, 6> coefs{};
  int n = 0;
  if (power == 1) {
    coefs[n++] = {0, 0, G.J};
    coefs[n++] = {1, 0, -G.sigma};
    coefs[n++] = {0, 1, -G.tau};
  } else {
    coefs[n++] = {0, 0, G.J * G.J};
    coefs[n++] = {1, 0, -2 * G.J * G.sigma};
    coefs[n++] = {0, 1, -2 * G.J * G.tau};
    coefs[n++] = {2, 0, G.sigma * G.sigma};
    coefs[n++] = {1, 1, 2 * G.sigma * G.tau};
    coefs[n++] = {0, 2, G.tau * G.tau};
  }
  real sum = 0;
  for (int k = 0; k < n; ++k) {
    if (coefs[k].c == 0) continue;
    sum += coefs[k].c * rect_monomial(coefs[k].i, coefs[k].j, G.A, G.B, G.g, K);
  }
  return sum;
}

real rect_gauss(int power, const RectGeometry& G, double p) {
  const int nx = gauss_nodes_for(static_cast<double>(G.g), static_cast<double>(G.A));
  const int ny = gauss_nodes_for(static_cast<double>(G.g), static_cast<double>(G.B));
  const GaussRule& rx = gauss_legendre(nx);
  const GaussRule& ry = gauss_legendre(ny);
  const double hA = static_cast<double>(G.A) / 2, hB = static_cast<double>(G.B) / 2;
  const double g = static_cast<double>(G.g), J = static_cast<double>(G.J);
  const double sigma = static_cast<double>(G.sigma), tau = static_cast<double>(G.tau);
  real outer = 0;
  for (int a = 0; a < nx; ++a) {
    const double xi = hA * (1 + rx.nodes[a]);
    real inner = 0;
    for (int b = 0; b < ny; ++b) {
      const double eta = hB * (1 + ry.nodes[b]);
      const double D = J - sigma * xi - tau * eta;
      const double r = g + xi + eta;
      const double k = (p == 2.0) ? 1.0 / (r * r) : std::pow(r, -p);
      inner += ry.weights[b] * (power == 1 ? D : D * D) * k;
    }
    outer += rx.weights[a] * inner;
  }
  return outer * hA * hB;
}

real rect_integral(int power, const RectGeometry& G, const KernelExponent& s, const Potentials& K) {
  const real longest = std::max(G.A, G.B);
  const real shortest = std::min(G.A, G.B);
  if (G.g >= longest) return rect_gauss(power, G, s.power());
  if (longest <= kAspectLimit * shortest) return rect_closed_form(power, G, K);
  if (G.A > G.B) {
    const real cut = std::max(2 * G.B, G.g);
    RectGeometry near = G;
    near.A = cut;
    RectGeometry far = G;
    far.A = G.A - cut;
    far.g = G.g + cut;
    far.J = G.J - G.sigma * cut;
    return rect_integral(power, near, s, K) + rect_integral(power, far, s, K);
  }
  const real cut = std::max(2 * G.A, G.g);
  RectGeometry near = G;
  near.B = cut;
  RectGeometry far = G;
  far.B = G.B - cut;
  far.g = G.g + cut;
  far.J = G.J - G.tau * cut;
  return rect_integral(power, near, s, K) + rect_integral(power, far, s, K);
}

PairOrder order_pair(const Segment& a, const Segment& b, bool allow_jump, const KernelExponent& s) {
  const bool a_first = (a.lo < b.lo) || (a.lo == b.lo && a.hi < b.hi);
  const Segment& left = a_first ? a : b;
  const Segment& right = a_first ? b : a;
  const double len_scale = std::max({left.length(), right.length(), std::abs(left.hi), std::abs(right.lo)});
  double gap = right.lo - left.hi;
  if (gap < 0) {
    if (gap < -1e-13 * len_scale) throw InvalidArgument("segment pair overlaps: split overlapping segments first");
    gap = 0;
  }
  RectGeometry G;
  G.A = left.length();
  G.B = right.length();
  G.g = gap;
  G.sigma = left.slope;
  G.tau = right.slope;
  const real left_end = left.value_at_lo + static_cast<real>(left.slope) * (left.hi - left.lo);
  G.J = left_end - static_cast<real>(right.value_at_lo);
  if (gap == 0) {
    const double value_scale = std::max({std::abs(left.value_at_lo), std::abs(right.value_at_lo),
                                         std::abs(left.slope) * left.length(), std::abs(right.slope) * right.length(),
                                         1e-300});
    if (std::abs(static_cast<double>(G.J)) <= 1e-10 * value_scale) {
      G.J = 0;
    } else if (!allow_jump) {
      throw InvalidArgument("touching segments disagree at the shared endpoint (jump not allowed)");
    } else if (!(s.e0() > 0)) {
      throw InvalidArgument("jump contact diverges for s >= 1/2");
    }
  }
  return PairOrder{G, a_first};
}

}  // namespace detail

double self_segment_energy(double len, double slope, const KernelExponent& s) {
  if (!(len > 0)) throw InvalidArgument("self_segment_energy: length must be positive");
  return slope * slope * std::pow(len, s.e2()) / ((1.0 - s.s()) * s.e2());
}

double segment_pair_energy(const Segment& a, const Segment& b, const KernelExponent& s, bool allow_jump) {
  if (a.lo == b.lo && a.hi == b.hi) {
    if (a.value_at_lo != b.value_at_lo || a.slope != b.slope)
      throw InvalidArgument("segment pair overlaps with different affine maps");
    return self_segment_energy(a.length(), a.slope, s);
  }
  const detail::PairOrder po = detail::order_pair(a, b, allow_jump, s);
  const detail::Potentials K = detail::potentials_for(s);
  return static_cast<double>(detail::rect_integral(2, po.geometry, s, K));
}

double segment_pair_cross(const Segment& a, const Segment& b, const KernelExponent& s) {
  if (a.lo == b.lo && a.hi == b.hi) throw InvalidArgument("segment_pair_cross: segments must be distinct");
  const detail::PairOrder po = detail::order_pair(a, b, false, s);
  const detail::Potentials K = detail::potentials_for(s);
  const double v = static_cast<double>(detail::rect_integral(1, po.geometry, s, K));
  return po.a_is_left ? v : -v;
}

namespace {

using detail::real;

real line_closed_form(real t0, real B, real c0, real tau, const detail::Potentials& K) {
  const real k1_far = K(1, t0 + B), k1_near = K(1, t0);
  return c0 * (k1_far - k1_near) - tau * (B * k1_far - K(2, t0 + B) + K(2, t0));
}

real line_gauss(real t0, real B, real c0, real tau, double p) {
  const int n = gauss_nodes_for(static_cast<double>(t0), static_cast<double>(B));
  const GaussRule& rule = gauss_legendre(n);
  const double h = static_cast<double>(B) / 2;
  real sum = 0;
  for (int i = 0; i < n; ++i) {
    const double eta = h * (1 + rule.nodes[i]);
    const double r = static_cast<double>(t0) + eta;
    const double k = (p == 2.0) ? 1.0 / (r * r) : std::pow(r, -p);
    sum += rule.weights[i] * (static_cast<double>(c0) - static_cast<double>(tau) * eta) * k;
  }
  return sum * h;
}

real line_integral(real t0, real B, real c0, real tau, const KernelExponent& s, const detail::Potentials& K) {
  if (2 * t0 >= B) return line_gauss(t0, B, c0, tau, s.power());
  if (B <= 4 * t0) return line_closed_form(t0, B, c0, tau, K);
  const real cut = 2 * t0;
  return line_closed_form(t0, cut, c0, tau, K) + line_integral(t0 + cut, B - cut, c0 - tau * cut, tau, s, K);
}

}  // namespace

double segment_point_integral(double x, double value, const Segment& b, const KernelExponent& s) {
  const detail::Potentials K = detail::potentials_for(s);
  if (x < b.lo) {
    const real t0 = static_cast<real>(b.lo) - x;
    return static_cast<double>(line_integral(t0, b.length(), static_cast<real>(value) - b.value_at_lo, b.slope, s, K));
  }
  if (x > b.hi) {
    const real t0 = x - static_cast<real>(b.hi);
    const real v_hi = b.value_at_lo + static_cast<real>(b.slope) * (b.hi - b.lo);
    return static_cast<double>(line_integral(t0, b.length(), static_cast<real>(value) - v_hi, -b.slope, s, K));
  }
  throw InvalidArgument("segment_point_integral: point lies on the segment");
}

}  // namespace twoslope
