#include "twoslope/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace twoslope {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// nlohmann prints the shortest round-trip form; we want fixed 17 digits, so
// walk the tree ourselves.
void write(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(2 * (indent + 1), ' '), close(2 * indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write(os, it.value(), indent + 1);
      }
      os << '\n' << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, j[i], indent + 1);
      }
      os << '\n' << close << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << '\n';
  return os.str();
}

Json to_json(const ProblemParams& p) {
  return Json{{"s", p.s}, {"Lambda", p.Lambda}, {"delta", p.delta}, {"L", p.L}, {"T", p.T}};
}

Json to_json(const GapConfiguration& g) { return Json(g.gaps); }

Json to_json(const TwoSlopeProfile& u) {
  Json segs = Json::array();
  for (const Segment& seg : u.period_segments())
    segs.push_back({{"lo", seg.lo}, {"hi", seg.hi}, {"value_at_lo", seg.value_at_lo}, {"slope", seg.slope}});
  return Json{{"params", to_json(u.params())},
              {"neg_interval_right_endpoints", u.neg_interval_right_endpoints()},
              {"anchor_value", u.anchor_value()},
              {"segments", segs}};
}

Json to_json(const EnergyResult& r) {
  return Json{{"value", r.value},
              {"tail_bound", r.tail_bound},
              {"periods_summed", r.periods_summed},
              {"method", to_string(r.method)}};
}

Json to_json(const EnergyBreakdown& b) {
  Json terms = Json::object();
  for (std::size_t i = 0; i < b.terms.size(); ++i) terms["I" + std::to_string(i + 1)] = b.terms[i];
  return Json{{"s", b.s}, {"delta", b.delta}, {"terms", terms}, {"sum", b.sum()}, {"tail_bound", b.tail_bound}};
}

Json to_json(const MinimizeReport& r) {
  Json j{{"best_gaps", to_json(r.best_gaps)},
         {"best_energy", to_json(r.best_energy)},
         {"iterations", r.iterations},
         {"converged", r.converged},
         {"periodicity_residual", r.periodicity_residual}};
  if (r.best_offset) j["best_offset"] = *r.best_offset;
  if (r.endpoint_antisymmetry) j["endpoint_antisymmetry"] = *r.endpoint_antisymmetry;
  return j;
}

Json to_json(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const SweepRow& r : rows)
    out.push_back({{"delta", r.delta},
                   {"sigma", r.sigma},
                   {"energy", r.energy},
                   {"ratio", r.ratio},
                   {"tail_bound", r.tail_bound},
                   {"periods_summed", r.periods_summed}});
  return out;
}

Json to_json(const ExtremalReport& r) {
  Json rows = Json::array();
  for (const ExtremalRow& row : r.rows)
    rows.push_back({{"delta", row.delta}, {"energy_s0", row.energy_s0}, {"delta_energy_s1", row.delta_energy_s1}});
  return Json{{"limit_s0", r.limit_s0}, {"limit_s1", r.limit_s1}, {"rows", rows}};
}

Json to_json(const MisfitReport& r) {
  auto slopes = [](const PlasticSlopes& p) { return Json{{"plus", p.plus}, {"minus", p.minus}}; };
  return Json{{"c", r.c},
              {"m", r.m},
              {"alpha_min", r.alpha_min},
              {"epsilon_core", r.epsilon_core},
              {"Delta", r.Delta},
              {"prefactor", r.prefactor},
              {"leading_density", r.leading_density},
              {"finite_delta_density", r.finite_delta_density},
              {"finite_delta_tail_bound", r.finite_delta_tail_bound},
              {"delta", r.delta},
              {"seminorm_density", r.seminorm_density},
              {"elastic_weight", r.elastic_weight},
              {"elastic_slopes", slopes(r.elastic_slopes)},
              {"plastic_slopes_linearized", slopes(r.plastic_linearized)},
              {"plastic_slopes_nonlinear", slopes(r.plastic_nonlinear)},
              {"burgers_sum", r.burgers_sum},
              {"coherent", r.coherent},
              {"convention", r.convention},
              {"warning", r.warning}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "delta,sigma,energy,ratio,tail_bound\n";
  for (const SweepRow& r : rows)
    out += format_double(r.delta) + ',' + format_double(r.sigma) + ',' + format_double(r.energy) + ',' +
           format_double(r.ratio) + ',' + format_double(r.tail_bound) + '\n';
  return out;
}

std::string extremal_csv(const ExtremalReport& r) {
  std::string out = "delta,energy_s0,delta_energy_s1\n";
  for (const ExtremalRow& row : r.rows)
    out += format_double(row.delta) + ',' + format_double(row.energy_s0) + ',' + format_double(row.delta_energy_s1) +
           '\n';
  return out;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out = "start,iter,energy,residual\n";
  for (const TraceRow& r : rows)
    out += std::to_string(r.start) + ',' + std::to_string(r.iter) + ',' + format_double(r.energy) + ',' +
           format_double(r.residual) + '\n';
  return out;
}

}  // namespace twoslope
