#include "twoslope/laplacian.hpp"

#include <cmath>
#include <vector>

#include "lattice.hpp"
#include "pair_geometry.hpp"
#include "twoslope/errors.hpp"
#include "twoslope/numeric.hpp"

namespace twoslope {

namespace {

// Raises K until the tail bound meets tol.
template <class Tail>
detail::TailEstimate certified_tail(Tail&& tail, double tol, long& K) {
  K = detail::kMinPeriods;
  for (;;) {
    const detail::TailEstimate t = tail(K);
    if (t.bound <= tol) return t;
    if (K >= detail::kMaxPeriods)
      throw CertificationError("fractional Laplacian: tail bound above tolerance", t.bound);
    K = std::min(2 * K, detail::kMaxPeriods);
  }
}

// Joins neighbours that continue the same affine map, so that only genuine
// kinks separate pieces.
// Also absorbs rounding slivers (width <= eps) into the previous piece.
std::vector<Segment> merge_affine(const std::vector<Segment>& pieces, double eps) {
  std::vector<Segment> out;
  for (const Segment& p : pieces) {
    if (!out.empty() && ((out.back().slope == p.slope && out.back().hi == p.lo) || p.hi - p.lo <= eps)) {
      out.back().hi = p.hi;
      continue;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace

double frac_laplacian_point(const TwoSlopeProfile& profile, double x, const KernelExponent& s, double tol) {
  if (!std::isfinite(x)) throw InvalidArgument("frac_laplacian_point: x must be finite");
  if (!(tol > 0)) throw InvalidArgument("frac_laplacian_point: tol must be positive");
  if (profile.distance_to_kink(x) == 0) throw InvalidArgument("kink point");
  const double T = profile.period();
  const std::vector<Segment> frame = merge_affine(profile.segments_over(x - T / 2, x + T / 2), 1e-13 * T);

  std::size_t home = frame.size();
  for (std::size_t j = 0; j < frame.size(); ++j)
    if (frame[j].lo < x && x < frame[j].hi) home = j;
  if (home == frame.size()) throw InvalidArgument("kink point");
  const Segment& c = frame[home];
  const double ux = c.value_at(x);

  // The part of c symmetric about x cancels; what remains is the one-sided
  // annulus between the shorter and the longer side.
  const double left = x - c.lo, right = c.hi - x;
  const double r0 = std::min(left, right), R = std::max(left, right);
  const long double annulus =
      std::pow(static_cast<long double>(r0), static_cast<long double>(s.e0())) *
      detail::powm1_over(static_cast<long double>(R) / r0, s.e0());
  const double pv = static_cast<double>((right > left ? -1 : 1) * c.slope * annulus);

  long K = 0;
  // the factor 2 of the operator is applied at the end
  const detail::TailEstimate tail = certified_tail(
      [&](long k) { return detail::point_tail(x, ux, frame, T, profile.oscillation(), s, k); }, tol / 2, K);

  const double direct = detail::ordered_k_sum(K, [&](long k) {
    KahanSum sum;
    for (std::size_t j = 0; j < frame.size(); ++j) {
      if (k == 0 && j == home) {
        sum += pv;
        continue;
      }
      sum += segment_point_integral(x, ux, frame[j].translated(static_cast<double>(k) * T), s);
    }
    return sum.value();
  });
  return 2 * (direct + tail.value);
}

double frac_laplacian_avg(const TwoSlopeProfile& profile, double lo, double hi, const KernelExponent& s, double tol) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) throw InvalidArgument("degenerate interval");
  if (!(tol > 0)) throw InvalidArgument("frac_laplacian_avg: tol must be positive");
  const double T = profile.period();
  if (hi - lo > T * (1 + 1e-12)) throw InvalidArgument("interval longer than one period");
  hi = std::min(hi, lo + T);

  // Frame [0, T) in coordinates relative to lo, cut at hi; pieces inside the
  // interval are the rows. The local frame puts the seams exactly at 0 and T:
  // for s > 1/2 a spurious gap g between touching periods shifts the cross
  // integrals by O(g^{2-2s}), which (lo + T) - T != lo would otherwise cause.
  std::vector<Segment> local;
  // Contiguous; pieces narrower than rounding (e.g. from a gap vector that
  // does not sum to the period exactly) are absorbed by their right neighbour.
  double at = 0;
  for (const Segment& p : profile.segments_over(lo, lo + T)) {
    const double b = std::min(p.hi - lo, T);
    if (!(b - at > 1e-13 * T)) continue;
    local.emplace_back(at, b, p.value_at(at + lo), p.slope);
    at = b;
  }
  local.back().hi = T;
  double cut = hi - lo;
  // snap to a piece boundary within rounding so no sliver piece is formed
  for (const Segment& p : local)
    if (std::abs(p.hi - cut) <= 1e-13 * T) cut = p.hi;
  std::vector<Segment> frame;
  for (const Segment& p : local) {
    if (p.lo < cut && cut < p.hi) {
      frame.push_back(p.restricted(p.lo, cut));
      frame.push_back(p.restricted(cut, p.hi));
    } else {
      frame.push_back(p);
    }
  }
  std::vector<Segment> rows;
  std::vector<bool> inside(frame.size());
  for (std::size_t j = 0; j < frame.size(); ++j) {
    inside[j] = frame[j].hi <= cut;
    if (inside[j]) rows.push_back(frame[j]);
  }

  // int_I (-Delta)^s u = 2 sum over (a in I, b outside I) of the cross
  // integral; the I x I block vanishes by antisymmetry.
  long K = 0;
  const detail::TailEstimate tail = certified_tail(
      [&](long k) { return detail::cross_tail(rows, frame, T, profile.oscillation(), s, k); }, tol / 2, K);
  const double direct = detail::ordered_k_sum(K, [&](long k) {
    KahanSum sum;
    for (std::size_t i = 0; i < frame.size(); ++i) {
      if (!inside[i]) continue;
      for (std::size_t j = 0; j < frame.size(); ++j) {
        if (k == 0 && inside[j]) continue;
        sum += segment_pair_cross(frame[i], frame[j].translated(static_cast<double>(k) * T), s);
      }
    }
    return sum.value();
  });
  return 2 * (direct + tail.value);
}

}  // namespace twoslope
