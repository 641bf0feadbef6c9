#pragma once

#include <array>
#include <span>
#include <string>

#include "twoslope/kernel.hpp"
#include "twoslope/profile.hpp"

namespace twoslope {

enum class EnergyMethod { closed_form, oracle };

/// How the interactions with periods |k| > K are accounted for.
///  expansion: summed analytically, remainder bounded (default);
///  crude:     dropped, bounded by osc^2 over whole-period blocks.
enum class TailMethod { expansion, crude };

std::string to_string(EnergyMethod m);
std::string to_string(TailMethod m);

struct EnergyOptions {
  EnergyMethod method = EnergyMethod::closed_form;
  TailMethod tail = TailMethod::expansion;
  /// Relative tolerance handed to quadrature_oracle per pair.
  double oracle_tol = 1e-12;
};

struct EnergyResult {
  double value = 0;
  /// Rigorous bound on the omitted / series-truncated far-period part.
  double tail_bound = 0;
  /// Number of periods 2K + 1 summed pair by pair.
  long periods_summed = 0;
  EnergyMethod method = EnergyMethod::closed_form;
};

/// (1/2T) int_0^T int_R (u(x) - u(y))^2 |x-y|^{-1-2s}, tail certified to `tol`.
EnergyResult energy(const TwoSlopeProfile& profile, double s, double tol, const EnergyOptions& opts = {});

/// Same functional for a general T-periodic piecewise-affine function given by
/// consecutive segments spanning one period. With `allow_jump`, neighbouring
/// segments may disagree at shared endpoints (s < 1/2 only).
EnergyResult periodic_energy(std::span<const Segment> period, double T, double s, double tol, bool allow_jump,
                             const EnergyOptions& opts = {});

/// Smallest number of periods K with crude tail bound <= tol (may exceed the
/// certification budget; used for runtime warnings).
long crude_periods_needed(double osc, double T, double s, double tol);

/// The ten interaction blocks of the canonical profile at Lambda delta = 1,
/// each including its factor 1/2:
///   1 neg0 x neg0   2 neg0 x pos0   3 neg0 x pos-1   4 neg0 x rest
///   5 pos0 x neg0   6 pos0 x pos0   7 pos0 x neg1    8 pos0 x pos1
///   9 pos0 x pos-1  10 pos0 x rest
/// where neg_k = [-delta, 0] + kT, pos_k = [0, 1] + kT, T = 1 + delta.
struct EnergyBreakdown {
  double s = 0;
  double delta = 0;
  std::array<double, 10> terms{};
  /// Tail bounds carried by terms 4 and 10.
  double tail_bound = 0;
  double sum() const;
};

EnergyBreakdown energy_breakdown(double s, double delta, double tol);

/// (1/2T) int_0^T (u + offset)^2, exact.
double energy_s0(const TwoSlopeProfile& profile, double vertical_offset);
/// The offset minimizing energy_s0: minus the mean of u.
double best_offset(const TwoSlopeProfile& profile);
/// (1/2T) int_0^T |u'|^2, exact.
double energy_s1(const TwoSlopeProfile& profile);

}  // namespace twoslope
