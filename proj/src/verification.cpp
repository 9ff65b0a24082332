#include "pfm/verification.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/core.h>

#include "pfm/admissibility.hpp"
#include "pfm/closure.hpp"
#include "pfm/domination.hpp"
#include "pfm/errors.hpp"
#include "pfm/formulas.hpp"
#include "pfm/generators.hpp"
#include "pfm/parallel.hpp"
#include "pfm/rng.hpp"

namespace pfm {

namespace {

constexpr std::array<std::string_view, 7> kSuiteNames = {
    "admissible", "domination", "holley", "fkg", "lll", "appendix", "majority"};

struct CaseOutcome {
  std::optional<CaseFailure> failure;
  std::string note;  // optional per-case summary
  int flag = 0;      // suite-specific counter (e.g. dominated pairs)
};

std::string serialize(const Dag& g) {
  std::ostringstream s;
  write_edge_list(s, g);
  return s.str();
}

std::string serialize(const Measure& m) {
  std::ostringstream s;
  write_measure(s, m);
  return s.str();
}

std::string serialize(const Event& e) {
  std::string out;
  const std::size_t size = std::size_t{1} << e.num_coordinates();
  for (std::size_t x = 0; x < size; ++x) {
    if (!e.contains(static_cast<Config>(x))) continue;
    if (!out.empty()) out += ' ';
    out += config_string(static_cast<Config>(x), e.num_coordinates());
  }
  return "{" + out + "}\n";
}

// Collects failed checks for one case.
class CaseChecker {
 public:
  CaseChecker(std::size_t index, std::uint64_t seed) : index_(index), seed_(seed) {}

  void expect(bool ok, std::string message) {
    if (!ok && messages_.empty()) first_ = std::move(message);
    if (!ok) messages_.push_back(first_);
  }
  void attach(std::string label, const std::string& body) { instance_ += label + ":\n" + body; }

  CaseOutcome finish() {
    CaseOutcome out;
    if (!messages_.empty()) out.failure = CaseFailure{index_, seed_, first_, instance_};
    return out;
  }

 private:
  std::size_t index_;
  std::uint64_t seed_;
  std::string first_;
  std::vector<std::string> messages_;
  std::string instance_;
};

CaseOutcome admissible_case(std::size_t index, std::uint64_t seed) {
  constexpr std::array<double, 3> kEps = {0.05, 0.1, 0.25};
  Rng rng(seed);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
  const double p = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
  const double eps = kEps[index % kEps.size()];
  const Dag g = random_barak_erdos(n, p, rng);
  const Closure c = transitive_closure(g);
  const Measure m = sample_admissible(c, eps, rng(), AdmissibleStrategy::mixture);

  CaseChecker check(index, seed);
  check.attach(fmt::format("eps = {}; graph", eps), serialize(g));
  check.attach("measure", serialize(m));

  const double floor = f_epsilon_exact(n, eps);
  check.expect(is_epsilon_admissible(m, c, eps), "generated mixture is not eps-admissible");
  check.expect(failure_free_prob(m) >= floor - 1e-12,
               fmt::format("failure-free probability {:.17g} below (1-eps)^n = {:.17g}",
                           failure_free_prob(m), floor));
  const Measure pi = Measure::product(std::vector<double>(n, eps));
  check.expect(std::abs(failure_free_prob(pi) - floor) <= 1e-12,
               "pi_eps does not attain (1-eps)^n");
  check.expect(is_epsilon_admissible(pi, c, eps), "pi_eps is not eps-admissible");
  const Measure flipped = complement_measure(m);
  check.expect(is_in_w(flipped, c, 1.0 - eps), "complement is not in W on the closure graph");
  check.expect(holley_check(flipped, 1.0 - eps, linear_extension(g)),
               "complement fails the Holley condition along a linear extension");
  check.expect(dominates(pi, m), "mu is not dominated by pi_eps");
  return check.finish();
}

CaseOutcome domination_case(std::size_t index, std::uint64_t seed,
                            const std::vector<Event>& up_sets) {
  constexpr std::size_t n = 4;
  Rng rng(seed);
  const Measure mu = random_dense_measure(n, rng);
  Measure nu = mu;
  switch (index % 4) {
    case 0:
    case 1:
      nu = random_dense_measure(n, rng);
      break;
    case 2:
      nu = random_push_up(mu, rng);
      break;
    default: {
      // Dominating pair nudged toward a random measure: small violations.
      const Measure up = random_push_up(mu, rng);
      const Measure noise = random_dense_measure(n, rng);
      const double w = std::uniform_real_distribution<double>(0.0, 0.05)(rng);
      std::vector<double> table(up.num_configs());
      for (std::size_t x = 0; x < table.size(); ++x) {
        table[x] = (1.0 - w) * up.mass(static_cast<Config>(x)) + w * noise.mass(static_cast<Config>(x));
      }
      double total = 0.0;
      for (double v : table) total += v;
      for (double& v : table) v /= total;
      nu = Measure::dense(n, std::move(table));
      break;
    }
  }

  bool oracle = true;
  for (const Event& u : up_sets) {
    if (prob(mu, u) > prob(nu, u) + kDefaultTolerance) {
      oracle = false;
      break;
    }
  }
  const bool flow = dominates(nu, mu);

  CaseChecker check(index, seed);
  check.attach("lower", serialize(mu));
  check.attach("upper", serialize(nu));
  check.expect(flow == oracle, fmt::format("flow says {}, increasing-event oracle says {}", flow, oracle));
  if (flow) {
    const Coupling coupling = extract_coupling(mu, nu);
    check.expect(is_valid_coupling(coupling, mu, nu), "extracted coupling violates its invariants");
  }
  CaseOutcome out = check.finish();
  out.flag = flow ? 1 : 0;
  return out;
}

CaseOutcome holley_case(std::size_t index, std::uint64_t seed) {
  constexpr double kEta = 0.8;
  Rng rng(seed);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
  const std::vector<Vertex> order = random_permutation(n, rng);
  const Measure m = index % 2 == 0 ? random_sequential_measure(n, kEta, order, rng)
                                   : random_product_mixture(n, kEta, 1.0, rng);
  CaseChecker check(index, seed);
  std::string order_text;
  for (Vertex v : order) order_text += fmt::format("{} ", v + 1);
  check.attach("order", order_text + "\n");
  check.attach("measure", serialize(m));
  const bool holley = holley_check(m, kEta, order);
  check.expect(holley, "generated measure fails the Holley condition");
  if (holley) {
    check.expect(dominates(m, Measure::product(std::vector<double>(n, kEta))),
                 "Holley condition holds but the measure does not dominate pi_eta");
  }
  return check.finish();
}

CaseOutcome fkg_case(std::size_t index, std::uint64_t seed, const std::vector<Event>& up5,
                     const std::vector<Event>& up3) {
  constexpr double kTol = 1e-12;
  Rng rng(seed);
  CaseChecker check(index, seed);
  {
    const Measure m = random_product_measure(5, 0.0, 1.0, rng);
    std::uniform_int_distribution<std::size_t> pick(0, up5.size() - 1);
    const Event& a = up5[pick(rng)];
    const Event& b = up5[pick(rng)];
    if (!fkg_check(m, a, b, kTol)) {
      check.attach("measure", serialize(m));
      check.attach("e1", serialize(a));
      check.attach("e2", serialize(b));
      check.expect(false, "FKG violated on n = 5");
    }
  }
  if (index < 10) {
    const Measure m = random_product_measure(3, 0.0, 1.0, rng);
    for (const Event& a : up3) {
      for (const Event& b : up3) {
        if (!fkg_check(m, a, b, kTol)) {
          check.attach("measure", serialize(m));
          check.attach("e1", serialize(a));
          check.attach("e2", serialize(b));
          check.expect(false, "FKG violated on n = 3");
        }
      }
    }
  }
  return check.finish();
}

CaseOutcome lll_case(std::size_t index, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
  const double p = std::uniform_real_distribution<double>(0.1, 0.7)(rng);
  Dag g = random_barak_erdos(n, p, rng);
  if (g.num_edges() == 0) g = Dag::from_edges(n, {{0, 1}});
  const Closure c = transitive_closure(g);
  const std::size_t delta = c.delta();
  const double eps = theta(static_cast<double>(delta) + 1.0);
  const Measure m = sample_admissible(c, eps, rng(), AdmissibleStrategy::mixture);
  const LllInstance inst{m, c.as_dag(), std::vector<double>(n, 1.0 / (static_cast<double>(delta) + 1.0))};
  const LllResult res = lll_verify(inst);

  CaseChecker check(index, seed);
  check.attach(fmt::format("Delta = {}, eps = {:.17g}; graph", delta, eps), serialize(g));
  check.attach("measure", serialize(m));
  check.expect(res.condition_holds, "local-lemma condition fails for an admissible measure");
  check.expect(res.conclusion_holds,
               fmt::format("exact {:.17g} below bound {:.17g}", res.exact, res.bound));
  check.expect(std::abs(res.bound - lll_lower_bound(delta, n)) <= 1e-12,
               "bound disagrees with lll_lower_bound");
  check.expect(res.exact >= f_g_exact(delta, n) - 1e-12, "exact probability below F_G");
  return check.finish();
}

CaseOutcome appendix_case(std::size_t index, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t delta = 1 + index % 2;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(delta + 1, 6)(rng);
  const Dag g = random_bounded_outdegree_dag(n, delta, rng);
  const double eps = theta(static_cast<double>(delta) + 1.0);
  const double eta = 1.0 - eps;
  const Measure mu = random_product_mixture(n, eta, 1.0, rng);

  CaseChecker check(index, seed);
  check.attach(fmt::format("Delta = {}, eta = {:.17g}; graph", delta, eta), serialize(g));
  check.attach("measure", serialize(mu));
  check.expect(is_in_w(mu, g, eta), "generated mixture is not in W");
  const AppendixCheck res = check_appendix_theorem(g, mu, eta);
  check.expect(res.dominated, fmt::format("mu does not dominate pi_rho, rho = {:.17g}", res.rho));

  const double a = res.alpha;
  const double l = res.lambda;
  const double d = static_cast<double>(res.delta);
  check.expect(std::abs((1.0 - a) * std::pow(1.0 - l, d) - eps) <= 1e-12, "cond1 is not tight");
  check.expect(eps <= (1.0 - a) * std::pow(a, d) + 1e-12, "cond2 fails");
  const Measure z = lss_construct(mu, l);
  check.expect(verify_zdom(z, a, l), "thinned law fails the alpha*lambda conditional bound");
  check.expect(dominates(mu, z), "thinned law is not dominated by mu");
  check.expect(dominates(z, Measure::product(std::vector<double>(n, a * l))),
               "thinned law does not dominate pi_{alpha*lambda}");
  return check.finish();
}

// P(Bin(a, eta) > a/2), summed in log space.
double strict_majority_prob(std::size_t a, double eta) {
  double total = 0.0;
  for (std::size_t k = a / 2 + 1; k <= a; ++k) {
    const double ka = static_cast<double>(k);
    const double aa = static_cast<double>(a);
    const double log_term = std::lgamma(aa + 1.0) - std::lgamma(ka + 1.0) - std::lgamma(aa - ka + 1.0) +
                            ka * std::log(eta) + (aa - ka) * std::log1p(-eta);
    total += std::exp(log_term);
  }
  return total;
}

CaseOutcome majority_case(std::size_t index, std::uint64_t seed, const SuiteOptions& options) {
  constexpr std::size_t kSubnets = 3;
  constexpr std::array<std::size_t, 2> kSizes = {16, 64};
  const std::size_t a = kSizes[index % kSizes.size()];
  const double eps = options.majority_eps;
  const double eta = 1.0 - eps;
  const std::size_t gates = kSubnets * a + 1;
  const Vertex output = static_cast<Vertex>(gates - 1);

  // Depth-2 network: every gate of subnetwork s feeds the output gate.
  std::vector<Edge> edges;
  for (Vertex v = 0; v < output; ++v) edges.push_back({v, output});
  const Dag network = Dag::from_edges(gates, std::move(edges));

  Rng rng(seed);
  std::bernoulli_distribution fails(eps);
  std::uint64_t majority = 0;
  std::uint64_t joint = 0;
  std::uint64_t implication_breaks = 0;
  const std::uint64_t samples = options.majority_samples;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::size_t alive_total = 0;
    bool all_subnets = true;
    for (std::size_t sub = 0; sub < kSubnets; ++sub) {
      std::size_t alive = 0;
      for (std::size_t k = 0; k < a; ++k) alive += fails(rng) ? 0 : 1;
      alive_total += alive;
      all_subnets = all_subnets && 2 * alive > a;
    }
    const bool output_alive = !fails(rng);
    alive_total += output_alive ? 1 : 0;
    const bool m = 2 * alive_total > gates;
    const bool l_and_mi = output_alive && all_subnets;
    majority += m ? 1 : 0;
    joint += l_and_mi ? 1 : 0;
    if (l_and_mi && !m) ++implication_breaks;
  }
  const double n_s = static_cast<double>(samples);
  const double p_hat = static_cast<double>(majority) / n_s;
  const double se = std::sqrt(p_hat * (1.0 - p_hat) / n_s);
  const double bound = majority_bound(eta, a, kSubnets);

  CaseChecker check(index, seed);
  check.attach(fmt::format("a = {}, d = {}, eps = {}, samples = {}; network", a, kSubnets, eps, samples),
               serialize(network));
  check.expect(p_hat >= bound - 3.0 * se,
               fmt::format("P(M) estimate {:.6f} below bound {:.6f} - 3se ({:.2e})", p_hat, bound, se));
  check.expect(implication_breaks == 0, "L and all M_i held without M");
  CaseOutcome out = check.finish();
  const double joint_exact = eta * std::pow(strict_majority_prob(a, eta), static_cast<double>(kSubnets));
  out.note = fmt::format(
      "a={} d={} eps={} P(M)~{:.6f} (se {:.2e}) P(L,M_1..M_d)~{:.6f} exact {:.8f} bound {:.8f}", a,
      kSubnets, eps, p_hat, se, static_cast<double>(joint) / n_s, joint_exact, bound);
  return out;
}

}  // namespace

Suite parse_suite(std::string_view name) {
  for (std::size_t k = 0; k < kSuiteNames.size(); ++k) {
    if (kSuiteNames[k] == name) return static_cast<Suite>(k);
  }
  throw InvalidArgument(fmt::format("unknown suite \"{}\"", name));
}

std::string_view suite_name(Suite s) { return kSuiteNames[static_cast<std::size_t>(s)]; }

SuiteReport run_verification_suite(Suite suite, std::size_t cases, std::uint64_t seed,
                                   const SuiteOptions& options) {
  if (cases == 0) throw InvalidArgument("verification suite: cases must be at least 1");
  std::vector<Event> up_a;
  std::vector<Event> up_b;
  if (suite == Suite::domination) up_a = enumerate_up_sets(4);
  if (suite == Suite::fkg) {
    up_a = enumerate_up_sets(5);
    up_b = enumerate_up_sets(3);
  }

  std::vector<CaseOutcome> outcomes(cases);
  parallel_for(cases, resolve_thread_count(options.threads), [&](std::size_t k) {
    const std::uint64_t case_seed = derive_seed(seed, k);
    switch (suite) {
      case Suite::admissible: outcomes[k] = admissible_case(k, case_seed); break;
      case Suite::domination: outcomes[k] = domination_case(k, case_seed, up_a); break;
      case Suite::holley: outcomes[k] = holley_case(k, case_seed); break;
      case Suite::fkg: outcomes[k] = fkg_case(k, case_seed, up_a, up_b); break;
      case Suite::lll: outcomes[k] = lll_case(k, case_seed); break;
      case Suite::appendix: outcomes[k] = appendix_case(k, case_seed); break;
      case Suite::majority: outcomes[k] = majority_case(k, case_seed, options); break;
    }
  });

  SuiteReport report;
  report.suite = suite;
  report.cases = cases;
  int flagged = 0;
  for (CaseOutcome& o : outcomes) {
    if (o.failure) report.failures.push_back(std::move(*o.failure));
    if (!o.note.empty()) report.notes.push_back(std::move(o.note));
    flagged += o.flag;
  }
  if (suite == Suite::domination) {
    report.notes.push_back(fmt::format("{} of {} pairs ordered", flagged, cases));
  }
  return report;
}

void write_report(std::ostream& out, const SuiteReport& report) {
  out << fmt::format("suite {}: {} cases, {} failures\n", suite_name(report.suite), report.cases,
                     report.failures.size());
  for (const std::string& note : report.notes) out << "  " << note << '\n';
  for (const CaseFailure& f : report.failures) {
    out << fmt::format("FAIL case {} (seed {}): {}\n", f.case_index, f.seed, f.message);
    out << f.instance;
  }
  out << (report.passed() ? "PASS\n" : "FAIL\n");
}

}  // namespace pfm
