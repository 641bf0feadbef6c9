#include "twoslope/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "twoslope/errors.hpp"
#include "twoslope/numeric.hpp"

namespace twoslope {

namespace {

void validate_core(double s, double Lambda, double delta, int L) {
  if (!std::isfinite(s) || s < 0.0 || s > 1.0) throw InvalidArgument("s must lie in [0, 1]");
  if (!std::isfinite(Lambda) || !(Lambda > 0)) throw InvalidArgument("Lambda must be positive");
  if (!std::isfinite(delta) || !(delta > 0)) throw InvalidArgument("delta must be positive");
  if (L < 1) throw InvalidArgument("L must be at least 1");
}

// Breakpoints closer than this (relative to T) are merged; they can only come
// from rounding when two intervals touch.
constexpr double kSnap = 1e-12;

double wrap(double x, double T) {
  double r = x - std::floor(x / T) * T;
  if (r >= T) r -= T;
  if (r < 0) r = 0;
  return r;
}

}  // namespace

ProblemParams::ProblemParams(double s_, double Lambda_, double delta_, int L_)
    : s(s_), Lambda(Lambda_), delta(delta_), L(L_) {
  validate_core(s, Lambda, delta, L);
  T = L * (Lambda + 1.0) * delta;
}

ProblemParams ProblemParams::with_period(double s, double Lambda, double delta, int L, double T) {
  ProblemParams p(s, Lambda, delta, L);
  if (!std::isfinite(T) || std::abs(T - p.T) > 8 * std::numeric_limits<double>::epsilon() * p.T)
    throw InvalidArgument("period must equal L (Lambda + 1) delta");
  p.T = T;
  return p;
}

TwoSlopeProfile::TwoSlopeProfile(const ProblemParams& params, std::vector<double> endpoints, double anchor)
    : params_(params), endpoints_(std::move(endpoints)), anchor_(anchor) {
  const double T = params_.T, delta = params_.delta;
  const int L = params_.L;
  if (static_cast<int>(endpoints_.size()) != L) throw InvalidArgument("profile needs exactly L interval endpoints");
  if (!std::isfinite(anchor_)) throw InvalidArgument("anchor value must be finite");
  for (double e : endpoints_)
    if (!std::isfinite(e) || e < 0 || e >= T) throw InvalidArgument("interval endpoints must lie in [0, T)");
  if (!std::is_sorted(endpoints_.begin(), endpoints_.end())) throw InvalidArgument("interval endpoints must be sorted");
  const double tol = kSnap * T;
  for (int i = 0; i < L; ++i) {
    const double next = (i + 1 < L) ? endpoints_[i + 1] : endpoints_[0] + T;
    if (next - endpoints_[i] < delta - tol) throw InvalidArgument("slope -Lambda intervals overlap");
  }

  // Breakpoints in [0, T]: interval ends and starts.
  std::vector<double> cuts{0.0, T};
  for (double e : endpoints_) {
    cuts.push_back(e);
    cuts.push_back(wrap(e - delta, T));
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> merged;
  for (double c : cuts) {
    if (!merged.empty() && c - merged.back() <= tol) continue;
    merged.push_back(c);
  }
  if (T - merged.back() <= tol) merged.back() = T;
  if (merged.back() != T) merged.push_back(T);

  auto in_negative = [&](double x) {
    for (double e : endpoints_) {
      double d = wrap(e - x, T);  // distance from x forward to e
      if (d > 0 && d < delta) return true;
    }
    return false;
  };

  double v = anchor_;
  double vmin = v, vmax = v;
  KahanSum integral;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    const double lo = merged[i], hi = merged[i + 1];
    const double slope = in_negative(0.5 * (lo + hi)) ? -params_.Lambda : 1.0;
    segments_.emplace_back(lo, hi, v, slope);
    const double len = hi - lo;
    integral += len * (v + 0.5 * slope * len);
    v += slope * len;
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  osc_ = vmax - vmin;
  mean_ = integral.value() / T;
}

double TwoSlopeProfile::evaluate(double x) const {
  const double xr = wrap(x, params_.T);
  auto it = std::upper_bound(segments_.begin(), segments_.end(), xr,
                             [](double value, const Segment& seg) { return value < seg.lo; });
  const Segment& seg = *(it == segments_.begin() ? it : std::prev(it));
  return seg.value_at(xr);
}

std::vector<Segment> TwoSlopeProfile::segments_in_window(long k_lo, long k_hi) const {
  if (k_lo > k_hi) throw InvalidArgument("segments_in_window: k_lo > k_hi");
  std::vector<Segment> out;
  out.reserve(static_cast<std::size_t>(k_hi - k_lo + 1) * segments_.size());
  const double T = params_.T;
  for (long k = k_lo; k <= k_hi; ++k) {
    const double shift = static_cast<double>(k) * T;
    for (const Segment& seg : segments_) {
      Segment t = seg.translated(shift);
      // keep consecutive segments exactly touching across period seams
      if (!out.empty() && std::abs(t.lo - out.back().hi) <= kSnap * T * (1 + std::abs(static_cast<double>(k))))
        t.lo = out.back().hi;
      out.push_back(t);
    }
  }
  return out;
}

std::vector<Segment> TwoSlopeProfile::segments_over(double lo, double hi) const {
  if (!(lo < hi)) throw InvalidArgument("segments_over: need lo < hi");
  const double T = params_.T;
  const long k_lo = static_cast<long>(std::floor(lo / T));
  const long k_hi = static_cast<long>(std::floor(hi / T));
  std::vector<Segment> out;
  for (const Segment& seg : segments_in_window(k_lo, k_hi)) {
    if (seg.hi <= lo || seg.lo >= hi) continue;
    const double a = std::max(seg.lo, lo), b = std::min(seg.hi, hi);
    if (b > a) out.push_back(seg.restricted(a, b));
  }
  return out;
}

std::vector<double> TwoSlopeProfile::kinks() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& prev = segments_[(i + segments_.size() - 1) % segments_.size()];
    if (prev.slope != segments_[i].slope) out.push_back(segments_[i].lo);
  }
  return out;
}

double TwoSlopeProfile::distance_to_kink(double x) const {
  const double T = params_.T;
  const double xr = wrap(x, T);
  double best = std::numeric_limits<double>::infinity();
  for (double k : kinks()) {
    const double d = std::abs(xr - k);
    best = std::min({best, d, T - d});
  }
  return best;
}

GapConfiguration TwoSlopeProfile::gaps() const {
  const int L = params_.L;
  GapConfiguration g;
  g.gaps.resize(L);
  for (int i = 0; i < L; ++i) {
    const double next = (i + 1 < L) ? endpoints_[i + 1] : endpoints_[0] + params_.T;
    g.gaps[i] = std::max(0.0, next - endpoints_[i] - params_.delta);
  }
  return g;
}

TwoSlopeProfile TwoSlopeProfile::translated(double t) const {
  std::vector<double> e;
  for (double x : endpoints_) e.push_back(wrap(x + t, params_.T));
  std::sort(e.begin(), e.end());
  return TwoSlopeProfile(params_, std::move(e), evaluate(-t));
}

TwoSlopeProfile build_canonical(const ProblemParams& params) {
  std::vector<double> e;
  for (int k = 0; k < params.L; ++k) e.push_back(k * (params.Lambda + 1.0) * params.delta);
  return TwoSlopeProfile(params, std::move(e), 0.0);
}

TwoSlopeProfile from_gaps(const GapConfiguration& g, const ProblemParams& params) {
  if (static_cast<int>(g.gaps.size()) != params.L) throw InvalidArgument("gap vector must have L entries");
  const double tol = kSnap * params.T;
  KahanSum total;
  for (double x : g.gaps) {
    if (!std::isfinite(x) || x < -tol) throw InvalidArgument("gaps must be nonnegative");
    total += x;
  }
  if (std::abs(total.value() - params.L * params.rise()) > tol)
    throw InvalidArgument("gaps must sum to L Lambda delta");
  std::vector<double> e{0.0};
  for (int i = 0; i + 1 < params.L; ++i) e.push_back(e.back() + params.delta + std::max(0.0, g.gaps[i]));
  return TwoSlopeProfile(params, std::move(e), 0.0);
}

std::optional<std::string> admissibility_violation(std::span<const Segment> period, const ProblemParams& params) {
  if (period.empty()) return "no segments";
  const double T = params.T;
  const double tol = 1e-9 * T;
  auto fail = [](const std::string& what, std::size_t i) {
    std::ostringstream os;
    os << what << " (segment " << i << ")";
    return std::optional<std::string>(os.str());
  };
  for (std::size_t i = 0; i < period.size(); ++i) {
    const Segment& seg = period[i];
    const bool up = std::abs(seg.slope - 1.0) <= 1e-12;
    const bool down = std::abs(seg.slope + params.Lambda) <= 1e-12 * params.Lambda;
    if (!up && !down) return fail("slope outside {1, -Lambda}", i);
    if (i + 1 < period.size()) {
      const Segment& next = period[i + 1];
      if (next.lo < seg.hi - tol) return fail("overlapping segments", i);
      if (next.lo > seg.hi + tol) return fail("segments do not cover the period", i);
      if (std::abs(seg.value_at_hi() - next.value_at_lo) > tol * std::max(1.0, params.Lambda))
        return fail("discontinuous value map", i);
    }
  }
  if (std::abs(period.back().hi - period.front().lo - T) > tol) return "segments do not span exactly one period";
  if (std::abs(period.back().value_at_hi() - period.front().value_at_lo) > tol * std::max(1.0, params.Lambda))
    return "profile is not periodic";

  // Maximal runs of slope -Lambda, merged cyclically.
  std::vector<double> runs;
  double current = 0;
  for (const Segment& seg : period) {
    if (seg.slope < 0) {
      current += seg.length();
    } else if (current > 0) {
      runs.push_back(current);
      current = 0;
    }
  }
  if (current > 0) {
    if (period.front().slope < 0 && !runs.empty()) runs.front() += current;
    else runs.push_back(current);
  }
  KahanSum total;
  for (double r : runs) {
    const double m = r / params.delta;
    if (std::abs(m - std::round(m)) > 1e-9 || std::round(m) < 1) return "slope -Lambda run is not a multiple of delta";
    total += r;
  }
  if (std::abs(total.value() - params.L * params.delta) > tol) return "wrong total length of slope -Lambda set";
  return std::nullopt;
}

}  // namespace twoslope
