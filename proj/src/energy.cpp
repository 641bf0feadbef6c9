#include "twoslope/energy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lattice.hpp"
#include "twoslope/errors.hpp"
#include "twoslope/numeric.hpp"

namespace twoslope {

std::string to_string(EnergyMethod m) { return m == EnergyMethod::oracle ? "oracle" : "closed_form"; }
std::string to_string(TailMethod m) { return m == TailMethod::crude ? "crude" : "expansion"; }

namespace {

detail::TailMode mode_of(TailMethod t) {
  return t == TailMethod::crude ? detail::TailMode::crude : detail::TailMode::expansion;
}

double pair_value(const Segment& a, const Segment& b, const KernelExponent& s, bool allow_jump,
                  const EnergyOptions& opts) {
  if (opts.method == EnergyMethod::oracle) return quadrature_oracle(a, b, s, opts.oracle_tol, allow_jump);
  return segment_pair_energy(a, b, s, allow_jump);
}

double oscillation_of(std::span<const Segment> segs) {
  double lo = segs.front().value_at_lo, hi = lo;
  for (const Segment& seg : segs) {
    lo = std::min({lo, seg.value_at_lo, seg.value_at_hi()});
    hi = std::max({hi, seg.value_at_lo, seg.value_at_hi()});
  }
  return hi - lo;
}

double crude_bound(double osc, double T, double s, long K) {
  const double Kd = static_cast<double>(K);
  const double p = 1 + 2 * s;
  // (1/2T) * 4 osc^2 T^2 T^{-p} (K^{-p} + K^{-2s}/(2s))
  return 2 * osc * osc * std::pow(T, -2 * s) * (std::pow(Kd, -p) + std::pow(Kd, -2 * s) / (2 * s));
}

void check_s(double s) {
  if (!(s > 0 && s < 1)) throw InvalidArgument("energy: s must lie in (0, 1)");
}

}  // namespace

long crude_periods_needed(double osc, double T, double s, double tol) {
  check_s(s);
  if (!(tol > 0)) throw InvalidArgument("tol must be positive");
  long hi = detail::kMinPeriods;
  while (crude_bound(osc, T, s, hi) > tol) {
    if (hi > (1L << 60)) return hi;
    hi *= 2;
  }
  if (hi == detail::kMinPeriods) return hi;
  long lo = hi / 2;  // bound(lo) > tol
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (crude_bound(osc, T, s, mid) > tol ? lo : hi) = mid;
  }
  return hi;
}

EnergyResult periodic_energy(std::span<const Segment> period, double T, double s, double tol, bool allow_jump,
                             const EnergyOptions& opts) {
  check_s(s);
  if (!(tol > 0)) throw InvalidArgument("energy: tol must be positive");
  if (period.empty() || !(T > 0)) throw InvalidArgument("energy: empty period");
  const KernelExponent ks(s);
  const double osc = oscillation_of(period);
  const double norm = 1 / (2 * T);

  long K = detail::kMinPeriods;
  detail::TailEstimate tail;
  if (opts.tail == TailMethod::crude) {
    K = crude_periods_needed(osc, T, s, tol);
    if (K > detail::kMaxPeriods)
      throw CertificationError("energy: tolerance needs more than 1e7 periods",
                               crude_bound(osc, T, s, detail::kMaxPeriods));
    tail = detail::energy_tail(period, period, T, osc, ks, K, detail::TailMode::crude);
  } else {
    for (;;) {
      tail = detail::energy_tail(period, period, T, osc, ks, K, mode_of(opts.tail));
      if (tail.bound * norm <= tol) break;
      if (K >= detail::kMaxPeriods)
        throw CertificationError("energy: tail bound above tolerance", tail.bound * norm);
      K = std::min(2 * K, detail::kMaxPeriods);
    }
  }

  const double direct = detail::ordered_k_sum(K, [&](long k) {
    KahanSum sum;
    const double shift = static_cast<double>(k) * T;
    for (const Segment& a : period)
      for (const Segment& b : period) sum += pair_value(a, b.translated(shift), ks, allow_jump, opts);
    return sum.value();
  });

  EnergyResult r;
  r.value = (direct + tail.value) * norm;
  r.tail_bound = tail.bound * norm;
  r.periods_summed = 2 * K + 1;
  r.method = opts.method;
  return r;
}

EnergyResult energy(const TwoSlopeProfile& profile, double s, double tol, const EnergyOptions& opts) {
  return periodic_energy(profile.period_segments(), profile.period(), s, tol, false, opts);
}

double EnergyBreakdown::sum() const {
  KahanSum total;
  for (double t : terms) total += t;
  return total.value();
}

EnergyBreakdown energy_breakdown(double s, double delta, double tol) {
  check_s(s);
  if (!(delta > 0) || !std::isfinite(delta)) throw InvalidArgument("breakdown: delta must be positive");
  if (!(tol > 0)) throw InvalidArgument("breakdown: tol must be positive");
  const KernelExponent ks(s);
  const double T = 1 + delta;
  const Segment neg(-delta, 0.0, 1.0, -1.0 / delta);
  const Segment pos(0.0, 1.0, 0.0, 1.0);
  const std::vector<Segment> period{neg, pos};
  const double osc = 1.0;

  auto at = [&](const Segment& seg, long k) { return seg.translated(static_cast<double>(k) * T); };
  auto half_pair = [&](const Segment& a, const Segment& b) { return 0.5 * segment_pair_energy(a, b, ks); };

  EnergyBreakdown out;
  out.s = s;
  out.delta = delta;
  auto& I = out.terms;
  // Each neighbour block is evaluated in the translate that puts its contact
  // point or gap at the origin, so the gap is exactly 0 or delta: x + T - T
  // != x, and a relative gap error e moves the near-singular blocks by O(e).
  const Segment pos_prev(-delta - 1, -delta, 0.0, 1.0);
  const Segment pos_left(-1.0, 0.0, 0.0, 1.0);  // pos0 shifted by -1
  const Segment neg_next(0.0, delta, 1.0, -1.0 / delta);
  const Segment pos_next(delta, 1 + delta, 0.0, 1.0);
  I[0] = 0.5 * self_segment_energy(neg.length(), neg.slope, ks);
  I[1] = half_pair(neg, pos);
  I[2] = half_pair(neg, pos_prev);
  I[4] = half_pair(pos, neg);
  I[5] = 0.5 * self_segment_energy(pos.length(), pos.slope, ks);
  I[6] = half_pair(pos_left, neg_next);
  I[7] = half_pair(pos_left, pos_next);
  I[8] = half_pair(pos, pos_prev);

  // Rows 4 and 10: everything not listed above, plus the far tail.
  auto rest_of_row = [&](const Segment& row, auto excluded) {
    const std::vector<Segment> rows{row};
    long K = detail::kMinPeriods;
    detail::TailEstimate tail;
    for (;;) {
      tail = detail::energy_tail(rows, period, T, osc, ks, K, detail::TailMode::expansion);
      if (0.5 * tail.bound <= tol / 2) break;
      if (K >= detail::kMaxPeriods) throw CertificationError("breakdown: tail bound above tolerance", 0.5 * tail.bound);
      K = std::min(2 * K, detail::kMaxPeriods);
    }
    const double direct = detail::ordered_k_sum(K, [&](long k) {
      KahanSum sum;
      for (std::size_t j = 0; j < period.size(); ++j)
        if (!excluded(k, j)) sum += segment_pair_energy(row, at(period[j], k), ks);
      return sum.value();
    });
    out.tail_bound += 0.5 * tail.bound;
    return 0.5 * (direct + tail.value);
  };
  constexpr std::size_t kPos = 1;
  I[3] = rest_of_row(neg, [](long k, std::size_t j) { return (k == 0) || (k == -1 && j == kPos); });
  I[9] = rest_of_row(pos, [](long k, std::size_t j) {
    return (k == 0) || (k == 1) || (k == -1 && j == kPos);
  });
  return out;
}

double energy_s0(const TwoSlopeProfile& profile, double vertical_offset) {
  if (!std::isfinite(vertical_offset)) throw InvalidArgument("energy_s0: offset must be finite");
  KahanSum sum;
  for (const Segment& seg : profile.period_segments()) {
    const double l = seg.length(), w = seg.value_at_lo + vertical_offset, m = seg.slope;
    sum += l * (w * w + w * m * l + m * m * l * l / 3);
  }
  return sum.value() / (2 * profile.period());
}

double best_offset(const TwoSlopeProfile& profile) { return -profile.mean(); }

double energy_s1(const TwoSlopeProfile& profile) {
  // slope -Lambda on measure L delta, slope 1 on the rest; summing segment
  // lengths would reintroduce rounding from the breakpoints
  const ProblemParams& p = profile.params();
  const double neg = p.L * p.delta;
  return (p.Lambda * p.Lambda * neg + (p.T - neg)) / (2 * p.T);
}

}  // namespace twoslope
