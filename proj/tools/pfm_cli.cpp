// pfm: command-line driver for sweeps, verification suites and bounds.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include "pfm/closure.hpp"
#include "pfm/dag.hpp"
#include "pfm/errors.hpp"
#include "pfm/experiment.hpp"
#include "pfm/formulas.hpp"
#include "pfm/verification.hpp"

namespace {

constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

void warn_clamped(const std::vector<std::uint64_t>& ns, const std::vector<double>& cs) {
  for (double c : cs) {
    for (std::uint64_t n : ns) {
      if (pfm::sweep_edge_probability(n, c).clamped) {
        fmt::print(std::cerr, "warning: c = {} at n = {} gives c*ln(n)/n > 1; p clamped to 1\n", c, n);
      }
    }
  }
}

int gen_dag(std::uint64_t n, std::optional<double> c, std::optional<double> p, std::uint64_t seed,
            const std::string& out_path) {
  double prob = 0.0;
  if (p) {
    prob = *p;
  } else {
    const pfm::EdgeProbability e = pfm::sweep_edge_probability(n, *c);
    if (e.clamped) fmt::print(std::cerr, "warning: p clamped to 1\n");
    prob = e.p;
  }
  const pfm::Dag g = pfm::sample_barak_erdos(n, prob, seed);
  if (out_path.empty()) {
    pfm::write_edge_list(std::cout, g);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) throw pfm::Error("cannot open " + out_path);
  pfm::write_edge_list(out, g);
  return 0;
}

int closure(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in) throw pfm::Error("cannot open " + in_path);
  const pfm::Closure c = pfm::transitive_closure(pfm::read_edge_list(in));
  const std::vector<std::size_t> sizes = pfm::rtc_sizes(c);
  for (std::size_t v = 0; v < sizes.size(); ++v) fmt::print("{} {}\n", v + 1, sizes[v]);
  fmt::print("gamma_star {}\ndelta {}\n", c.gamma_star(), c.delta());
  return 0;
}

int bounds(std::optional<std::uint64_t> delta, std::optional<double> eps, std::optional<std::uint64_t> n,
           std::optional<double> c) {
  if (delta) {
    const double d = static_cast<double>(*delta);
    fmt::print("theta(delta+1) {:.17g}\n", pfm::theta(d + 1.0));
    if (n) {
      fmt::print("lll_lower_bound {:.17g}\n", pfm::lll_lower_bound(*delta, *n));
      fmt::print("f_g_exact {:.17g}\n", pfm::f_g_exact(*delta, *n));
    }
    if (eps && *delta >= 1) {
      try {
        const pfm::RhoParams r = pfm::rho(*delta, *eps);
        fmt::print("alpha {:.17g}\nlambda {:.17g}\nrho {:.17g}\n", r.alpha, r.lambda, r.rho);
      } catch (const pfm::PreconditionFailed& e) {
        fmt::print("rho undefined: {}\n", e.what());
      }
    }
  }
  if (eps && n) fmt::print("f_epsilon_exact {:.17g}\n", pfm::f_epsilon_exact(*n, *eps));
  if (eps && *eps > 0.0 && *eps < 1.0) {
    const pfm::GameParams gp = pfm::game_parameters(*eps);
    fmt::print("game n0 {} c {:.17g} delta_margin {:.17g}\n", gp.n0, gp.c, gp.delta_margin);
  }
  if (c) {
    fmt::print("phase_limit {:.17g}\n", pfm::phase_limit(*c));
    if (n && *n >= 16) {
      const pfm::PtWindow w = pfm::pittel_tungol_window(*n, *c);
      fmt::print("window [{:.17g}, {:.17g}] {}\n", w.lo, w.hi, pfm::regime_name(w.regime));
    }
  }
  fmt::print("programmer_threshold {:.17g}\n", pfm::programmer_threshold());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic failure models on random DAGs"};
  app.require_subcommand(1);

  // gen-dag
  std::uint64_t gd_n = 0;
  std::optional<double> gd_c;
  std::optional<double> gd_p;
  std::uint64_t gd_seed = 0;
  std::string gd_out;
  auto* gd = app.add_subcommand("gen-dag", "Sample a Barak-Erdos DAG as a 1-based edge list");
  gd->add_option("--n", gd_n, "vertex count")->required();
  auto* gd_copt = gd->add_option("--c", gd_c, "density: p = c ln(n)/n");
  auto* gd_popt = gd->add_option("--p", gd_p, "edge probability");
  gd_copt->excludes(gd_popt);
  gd->add_option("--seed", gd_seed);
  gd->add_option("--out", gd_out);

  std::string cl_in;
  auto* cl = app.add_subcommand("closure", "Print RTC sizes and gamma*");
  cl->add_option("--in", cl_in)->required();

  pfm::SweepConfig sweep;
  double g_a = pfm::kDefaultWindowA;
  double g_kappa = pfm::kDefaultWindowKappa;
  auto add_sweep_options = [&](CLI::App* sub) {
    sub->add_option("--n", sweep.n_list)->required()->delimiter(',');
    sub->add_option("--c", sweep.c_list)->required()->delimiter(',');
    sub->add_option("--trials", sweep.trials);
    sub->add_option("--seed", sweep.master_seed);
    sub->add_option("--out", sweep.output_path);
  };
  auto* ph = app.add_subcommand("phase", "Phase-transition sweep");
  add_sweep_options(ph);
  auto* gm = app.add_subcommand("gamma", "gamma* sweep against the whp windows");
  add_sweep_options(gm);
  gm->add_option("--A", g_a);
  gm->add_option("--kappa", g_kappa);

  std::string v_suite;
  std::size_t v_cases = 100;
  std::uint64_t v_seed = 0;
  pfm::SuiteOptions v_options;
  auto* vf = app.add_subcommand("verify", "Run a randomized property suite");
  vf->add_option("suite", v_suite, "admissible|domination|holley|fkg|lll|appendix|majority")->required();
  vf->add_option("--cases", v_cases);
  vf->add_option("--seed", v_seed);
  vf->add_option("--samples", v_options.majority_samples, "Monte Carlo samples (majority)");

  std::optional<std::uint64_t> b_delta;
  std::optional<double> b_eps;
  std::optional<std::uint64_t> b_n;
  std::optional<double> b_c;
  auto* bd = app.add_subcommand("bounds", "Evaluate closed-form bounds");
  bd->add_option("--delta", b_delta);
  bd->add_option("--eps", b_eps);
  bd->add_option("--n", b_n);
  bd->add_option("--c", b_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (gd->parsed()) {
      if (!gd_c && !gd_p) {
        fmt::print(std::cerr, "gen-dag: one of --c or --p is required\n");
        return kExitUsage;
      }
      return gen_dag(gd_n, gd_c, gd_p, gd_seed, gd_out);
    }
    if (cl->parsed()) return closure(cl_in);
    if (ph->parsed() || gm->parsed()) {
      pfm::validate(sweep);
      warn_clamped(sweep.n_list, sweep.c_list);
      if (ph->parsed()) {
        const auto records = pfm::run_phase_sweep(sweep);
        if (sweep.output_path.empty()) pfm::write_phase_csv(std::cout, records);
      } else {
        const auto records = pfm::run_gamma_sweep(sweep, g_a, g_kappa);
        if (sweep.output_path.empty()) pfm::write_gamma_csv(std::cout, records);
      }
      return 0;
    }
    if (vf->parsed()) {
      const pfm::SuiteReport report =
          pfm::run_verification_suite(pfm::parse_suite(v_suite), v_cases, v_seed, v_options);
      pfm::write_report(std::cout, report);
      return report.passed() ? 0 : kExitVerification;
    }
    if (bd->parsed()) return bounds(b_delta, b_eps, b_n, b_c);
  } catch (const pfm::InvalidArgument& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const pfm::SizeLimitExceeded& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitUsage;
  }
  return 0;
}
