#pragma once

// Internal: local-coordinate description of a segment pair shared by the
// closed-form kernel and the oracle.

#include "twoslope/kernel.hpp"

namespace twoslope::detail {

using real = long double;

/// Left segment is xi in [0, A] measured leftward from its right end; right
/// segment is eta in [0, B] measured rightward from its left end; the gap
/// between them is g. The value difference is D = J - sigma xi - tau eta.
struct RectGeometry {
  real A = 0, B = 0, g = 0, J = 0, sigma = 0, tau = 0;
};

struct PairOrder {
  RectGeometry geometry;
  bool a_is_left = true;
};

/// Antiderivative chain K_1 .. K_4 of r^{-1-2s}: K_n' = K_{n-1}.
struct Potentials {
  real c;  // -1/(2s)
  real e;  // 1 - 2s
  real operator()(int n, real r) const;
};

/// Aspect ratio above which a near-field pair is split before the closed form.
inline constexpr real kAspectLimit = 4;

real powm1_over(real r, real e);
Potentials potentials_for(const KernelExponent& s);
real rect_monomial(int i, int j, real A, real B, real g, const Potentials& K);
real rect_closed_form(int power, const RectGeometry& G, const Potentials& K);
real rect_gauss(int power, const RectGeometry& G, double p);
real rect_integral(int power, const RectGeometry& G, const KernelExponent& s, const Potentials& K);
PairOrder order_pair(const Segment& a, const Segment& b, bool allow_jump, const KernelExponent& s);

}  // namespace twoslope::detail
