#pragma once

#include "twoslope/kernel.hpp"
#include "twoslope/profile.hpp"

namespace twoslope {

/// Absolute accuracy requested from the far-period tail when none is given.
inline constexpr double kDefaultLaplacianTol = 1e-10;

/// (-Delta)^s u(x) = 2 PV int (u(x) - u(y)) |x-y|^{-1-2s} dy.
/// Throws InvalidArgument at a kink, CertificationError if the tail bound
/// cannot be brought under `tol`.
double frac_laplacian_point(const TwoSlopeProfile& profile, double x, const KernelExponent& s,
                            double tol = kDefaultLaplacianTol);

/// int_lo^hi (-Delta)^s u(x) dx for 0 < hi - lo <= T.
double frac_laplacian_avg(const TwoSlopeProfile& profile, double lo, double hi, const KernelExponent& s,
                          double tol = kDefaultLaplacianTol);

}  // namespace twoslope
