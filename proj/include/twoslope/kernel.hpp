#pragma once

// Singular double integrals of the kernel |x - y|^{-1-2s} against affine
// value maps on pairs of segments.
//
// Near-field pairs are evaluated from closed-form antiderivatives of the
// monomial family xi^i eta^j (g + xi + eta)^{-1-2s}, i + j <= 2, summed over
// the rectangle corners. The antiderivative chain is written through
// E(r) = (r^e - 1)/e with e = 1 - 2s, which is continuous through s = 1/2
// (where it becomes log r). Well-separated pairs switch to a tensor
// Gauss-Legendre rule sized from the distance to the singular set, since the
// four-corner differences lose about 2 log10(g / len) digits there. Pairs of
// very different length are split dyadically until one of the two regimes
// applies.

namespace twoslope {

/// Half-width of the window around s = 1/2 where the logarithmic branch is
/// evaluated by a truncated Taylor series.
inline constexpr double kBranchWindow = 1e-6;

/// A closed interval [lo, hi] carrying v(x) = value_at_lo + slope * (x - lo).
struct Segment {
  double lo = 0.0;
  double hi = 1.0;
  double value_at_lo = 0.0;
  double slope = 0.0;

  Segment() = default;
  Segment(double lo, double hi, double value_at_lo, double slope);

  double length() const noexcept { return hi - lo; }
  double value_at(double x) const noexcept { return value_at_lo + slope * (x - lo); }
  double value_at_hi() const noexcept { return value_at_lo + slope * (hi - lo); }
  Segment translated(double dx) const { return Segment(lo + dx, hi + dx, value_at_lo, slope); }

  /// Restriction to [from, to] with the same affine map.
  Segment restricted(double from, double to) const;

  friend bool operator==(const Segment&, const Segment&) = default;
};

class KernelExponent {
 public:
  explicit KernelExponent(double s);

  double s() const noexcept { return s_; }
  /// Kernel power 1 + 2s.
  double power() const noexcept { return 1.0 + 2.0 * s_; }
  double e0() const noexcept { return 1.0 - 2.0 * s_; }
  double e1() const noexcept { return 2.0 - 2.0 * s_; }
  double e2() const noexcept { return 3.0 - 2.0 * s_; }
  bool near_half() const noexcept { return near_half_; }

 private:
  double s_;
  bool near_half_;
};

/// int_I int_I slope^2 |x-y|^{1-2s} over an interval of length `len`.
double self_segment_energy(double len, double slope, const KernelExponent& s);

/// int_a int_b (v_a(x) - v_b(y))^2 |x-y|^{-1-2s} dy dx.
///
/// Identical segments delegate to self_segment_energy. Otherwise interiors
/// must be disjoint. Touching segments must agree at the shared endpoint
/// unless `allow_jump` is set, which is only meaningful for s < 1/2.
double segment_pair_energy(const Segment& a, const Segment& b, const KernelExponent& s,
                           bool allow_jump = false);

/// int_a int_b (v_a(x) - v_b(y)) |x-y|^{-1-2s} dy dx for disjoint interiors
/// and continuous contact. Antisymmetric in (a, b).
double segment_pair_cross(const Segment& a, const Segment& b, const KernelExponent& s);

/// int_b (value - v_b(y)) |x-y|^{-1-2s} dy for a point x strictly outside b.
double segment_point_integral(double x, double value, const Segment& b, const KernelExponent& s);

/// Independent adaptive nested Gauss-Kronrod evaluation of the same integral
/// as segment_pair_energy, with geometric subdivision toward the diagonal and
/// toward shared endpoints. Throws OracleFailure when `tol` (relative) cannot
/// be met within the subdivision budget.
double quadrature_oracle(const Segment& a, const Segment& b, const KernelExponent& s, double tol,
                         bool allow_jump = false);

}  // namespace twoslope
