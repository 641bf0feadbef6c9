#include "twoslope/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "twoslope/asymptotics.hpp"
#include "twoslope/energy.hpp"
#include "twoslope/errors.hpp"
#include "twoslope/json_io.hpp"
#include "twoslope/laplacian.hpp"
#include "twoslope/misfit.hpp"
#include "twoslope/optimize.hpp"
#include "twoslope/parallel.hpp"
#include "twoslope/sampling.hpp"

#ifndef TWOSLOPE_VERSION
#define TWOSLOPE_VERSION "0.0.0"
#endif

namespace twoslope {

namespace {

struct ProfileFlags {
  double s = 0.5;
  double lambda = 1;
  double delta = 0.5;
  int L = 1;
  std::vector<double> gaps;

  void add_to(CLI::App* app, bool with_s = true) {
    if (with_s) app->add_option("--s", s, "fractional order")->required();
    app->add_option("--lambda", lambda, "negative slope magnitude Lambda")->required();
    app->add_option("--delta", delta, "length of each slope -Lambda interval")->required();
    app->add_option("--L", L, "slope -Lambda intervals per period")->capture_default_str();
    app->add_option("--gaps", gaps, "gap vector (defaults to equal gaps)")->delimiter(',');
  }
  ProblemParams params() const { return ProblemParams(s, lambda, delta, L); }
  TwoSlopeProfile profile() const {
    const ProblemParams p = params();
    return gaps.empty() ? build_canonical(p) : from_gaps({gaps}, p);
  }
};

EnergyMethod parse_method(const std::string& m) {
  if (m == "closed_form") return EnergyMethod::closed_form;
  if (m == "oracle") return EnergyMethod::oracle;
  throw InvalidArgument("unknown method: " + m);
}

TailMethod parse_tail(const std::string& t) {
  if (t == "expansion") return TailMethod::expansion;
  if (t == "crude") return TailMethod::crude;
  throw InvalidArgument("unknown tail method: " + t);
}

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Check> selftest(std::uint64_t seed) {
  std::vector<Check> out;
  {
    double worst = 0;
    for (double d : {0.5, 0.1, 0.01})
      for (double s : {0.25, 0.5, 0.75}) {
        const TwoSlopeProfile u = build_canonical(ProblemParams(s, 1 / d, d, 1));
        worst = std::max(worst, std::abs(frac_laplacian_avg(u, -d, 0.0, KernelExponent(s))));
      }
    out.push_back({"zero_average", worst <= 1e-8, "max |avg| = " + format_double(worst)});
  }
  {
    SplitMix64 rng(seed);
    double worst = 0;
    for (double s : {0.3, 0.5, 0.7}) {
      const KernelExponent ks(s);
      for (int i = 0; i < 40; ++i) {
        const auto [a, b] = random_segment_pair(rng);
        const double c = segment_pair_energy(a, b, ks), o = quadrature_oracle(a, b, ks, 1e-10);
        worst = std::max(worst, std::abs(c - o) / std::abs(o));
      }
    }
    out.push_back({"oracle_equivalence", worst <= 1e-8, "max rel err = " + format_double(worst)});
  }
  {
    double worst = 0;
    for (int i = 0; i < 50; ++i) worst = std::max(worst, std::abs(constant_sum_residual(0.51 + 0.48 * (i + 0.5) / 50)));
    out.push_back({"constant_sum", worst <= 1e-12, "max residual = " + format_double(worst)});
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified fractional energies of two-slope periodic profiles", "twoslope"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("twoslope ") + TWOSLOPE_VERSION + " (kernel branch window " +
                                        CLI::detail::to_string(kBranchWindow) + ")");
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string format;
  std::uint64_t seed = DescentOptions{}.rng_seed;
  app.add_option("--threads", threads, "maximum worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "seed for randomized runs");

  std::function<void()> action;
  auto fmt_or = [&](const char* def) { return format.empty() ? std::string(def) : format; };
  auto emit_json = [&](const Json& j) {
    if (fmt_or("json") != "json") throw InvalidArgument("this subcommand only produces json");
    out << dump_json(j);
  };

  // eval
  ProfileFlags eval_pf;
  std::optional<double> eval_tol;
  std::string eval_method = "closed_form", eval_tail = "expansion";
  double eval_oracle_tol = 1e-12;
  auto* eval = app.add_subcommand("eval", "certified energy of a profile");
  eval_pf.add_to(eval);
  eval->add_option("--tol", eval_tol, "absolute tail tolerance (default 1e-6 max(1,|value|))");
  eval->add_option("--method", eval_method, "closed_form or oracle");
  eval->add_option("--tail", eval_tail, "expansion or crude");
  eval->add_option("--oracle-tol", eval_oracle_tol, "relative tolerance per oracle pair");
  eval->callback([&] {
    action = [&] {
      EnergyOptions opts{parse_method(eval_method), parse_tail(eval_tail), eval_oracle_tol};
      const TwoSlopeProfile u = eval_pf.profile();
      EnergyResult r;
      if (eval_tol) {
        r = energy(u, eval_pf.s, *eval_tol, opts);
      } else {
        // relative certification: estimate first, then tighten if needed
        r = energy(u, eval_pf.s, 1e-6, opts);
        const double tol = 1e-6 * std::max(1.0, std::abs(r.value));
        if (r.tail_bound > tol) r = energy(u, eval_pf.s, tol, opts);
      }
      emit_json(to_json(r));
    };
  });

  // breakdown
  double bd_s = 0.75, bd_delta = 1e-3, bd_tol = 1e-10;
  auto* bd = app.add_subcommand("breakdown", "ten interaction blocks of the canonical profile, Lambda delta = 1");
  bd->add_option("--s", bd_s)->required();
  bd->add_option("--delta", bd_delta)->required();
  bd->add_option("--tol", bd_tol)->capture_default_str();
  bd->callback([&] { action = [&] { emit_json(to_json(energy_breakdown(bd_s, bd_delta, bd_tol))); }; });

  // laplacian
  ProfileFlags lap_pf;
  std::optional<double> lap_x, lap_lo, lap_hi;
  double lap_tol = kDefaultLaplacianTol;
  auto* lap = app.add_subcommand("laplacian", "fractional Laplacian at a point or integrated over an interval");
  lap_pf.add_to(lap);
  lap->add_option("--x", lap_x, "evaluation point");
  lap->add_option("--lo", lap_lo, "interval start");
  lap->add_option("--hi", lap_hi, "interval end");
  lap->add_option("--tol", lap_tol)->capture_default_str();
  lap->callback([&] {
    action = [&] {
      const TwoSlopeProfile u = lap_pf.profile();
      const KernelExponent ks(lap_pf.s);
      if (lap_x && !lap_lo && !lap_hi) {
        emit_json(Json{{"x", *lap_x}, {"value", frac_laplacian_point(u, *lap_x, ks, lap_tol)}});
      } else if (!lap_x && lap_lo && lap_hi) {
        emit_json(Json{{"lo", *lap_lo}, {"hi", *lap_hi}, {"integral", frac_laplacian_avg(u, *lap_lo, *lap_hi, ks, lap_tol)}});
      } else {
        throw InvalidArgument("laplacian: give either --x or both --lo and --hi");
      }
    };
  });

  // minimize
  ProfileFlags min_pf;
  DescentOptions dopts;
  auto* mn = app.add_subcommand("minimize", "projected gradient descent over gap configurations");
  min_pf.add_to(mn);
  mn->add_option("--max-iters", dopts.max_iters)->capture_default_str();
  mn->add_option("--grad-tol", dopts.grad_tol)->capture_default_str();
  mn->add_option("--step-init", dopts.step_init)->capture_default_str();
  mn->add_option("--backtrack", dopts.backtrack_ratio)->capture_default_str();
  mn->add_option("--multistart", dopts.multistart_count)->capture_default_str();
  mn->add_option("--energy-tol", dopts.energy_tol)->capture_default_str();
  mn->callback([&] {
    action = [&] {
      dopts.rng_seed = seed;
      std::vector<TraceRow> trace;
      const MinimizeReport r = minimize_gaps(min_pf.params(), min_pf.s, dopts, &trace);
      if (fmt_or("json") == "csv")
        out << trace_csv(trace);
      else
        out << dump_json(to_json(r));
    };
  });

  // brute
  ProfileFlags br_pf;
  int grid_n = 100;
  double br_tol = 1e-12;
  auto* br = app.add_subcommand("brute", "exhaustive search over the gap simplex grid (s = 0: offset too)");
  br_pf.add_to(br);
  br->add_option("--grid-n", grid_n)->capture_default_str();
  br->add_option("--tol", br_tol)->capture_default_str();
  br->callback([&] {
    action = [&] {
      const ProblemParams p = br_pf.params();
      emit_json(to_json(br_pf.s == 0 ? verify_s0_minimizer(p, grid_n) : brute_force(p, br_pf.s, grid_n, br_tol)));
    };
  });

  // sweep
  double sw_s = 0.5, sw_tol = 1e-6;
  std::vector<double> sw_deltas = kDefaultSweepDeltas;
  std::string sw_tail = "expansion";
  auto* sw = app.add_subcommand("sweep", "energy / sigma along a delta grid, Lambda = 1/delta");
  sw->add_option("--s", sw_s)->required();
  sw->add_option("--deltas", sw_deltas)->delimiter(',');
  sw->add_option("--tol", sw_tol, "tolerance relative to sigma")->capture_default_str();
  sw->add_option("--tail", sw_tail, "expansion or crude");
  sw->callback([&] {
    action = [&] {
      const TailMethod tail = parse_tail(sw_tail);
      if (tail == TailMethod::crude)
        for (double d : sw_deltas) {
          const long K = crude_periods_needed(1.0, 1 + d, sw_s, sw_tol * std::max(1.0, sigma(sw_s, d)));
          if (K > 1'000'000)
            err << "warning: delta = " << format_double(d) << " needs K = " << K << " periods for the crude tail\n";
        }
      const auto rows = ratio_sweep(sw_s, sw_deltas, sw_tol, tail);
      if (fmt_or("csv") == "csv")
        out << sweep_csv(rows);
      else
        out << dump_json(to_json(rows));
    };
  });

  // mantissa
  double ma_s = 0.25, ma_tol = 1e-10;
  auto* ma = app.add_subcommand("mantissa", "limit energy of the mantissa function, s < 1/2");
  ma->add_option("--s", ma_s)->required();
  ma->add_option("--tol", ma_tol)->capture_default_str();
  ma->callback([&] { action = [&] { emit_json(to_json(mantissa_constant(ma_s, ma_tol))); }; });

  // extremal
  std::vector<double> ex_deltas{0.5, 0.1, 1e-3};
  auto* ex = app.add_subcommand("extremal", "s = 0 and s = 1 functionals of the canonical profile");
  ex->add_option("--deltas", ex_deltas)->delimiter(',');
  ex->callback([&] {
    action = [&] {
      const ExtremalReport r = extremal_limits(ex_deltas);
      if (fmt_or("json") == "csv")
        out << extremal_csv(r);
      else
        out << dump_json(to_json(r));
    };
  });

  // misfit
  MisfitInputs mi;
  double mi_tol = 1e-10;
  auto* mf = app.add_subcommand("misfit", "semi-coherent interface energy");
  mf->add_option("--g-plus", mi.G_plus)->required();
  mf->add_option("--g-minus", mi.G_minus)->required();
  mf->add_option("--nu-plus", mi.nu_plus)->required();
  mf->add_option("--nu-minus", mi.nu_minus)->required();
  mf->add_option("--c-plus", mi.c_plus)->required();
  mf->add_option("--c-minus", mi.c_minus)->required();
  mf->add_option("--tol", mi_tol)->capture_default_str();
  mf->callback([&] { action = [&] { emit_json(to_json(misfit_solve(mi, mi_tol))); }; });

  // selftest
  bool all_pass = true;
  auto* st = app.add_subcommand("selftest", "invariant checks");
  st->callback([&] {
    action = [&] {
      for (const Check& c : selftest(seed)) {
        all_pass = all_pass && c.pass;
        char line[128];
        std::snprintf(line, sizeof line, "%-20s %s  ", c.name.c_str(), c.pass ? "PASS" : "FAIL");
        out << line << c.detail << '\n';
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitInvalid;
  }

  try {
    set_max_threads(threads);
    if (action) action();
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const CertificationError& e) {
    err << "certification failed: " << e.what() << " (achieved bound " << format_double(e.achieved_bound()) << ")\n";
    return kExitCertification;
  } catch (const OracleFailure& e) {
    err << "certification failed: " << e.what() << '\n';
    return kExitCertification;
  }
  return all_pass ? kExitOk : kExitCertification;
}

}  // namespace twoslope
