#include "pfm/domination.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/core.h>

#include "pfm/admissibility.hpp"
#include "pfm/conditionals.hpp"
#include "pfm/errors.hpp"
#include "pfm/formulas.hpp"
#include "pfm/max_flow.hpp"

namespace pfm {

namespace {

using Units = MaxFlow::Capacity;
constexpr Units kTotalUnits = 1'000'000'000'000;  // kFlowScale

Config full_mask(std::size_t n) { return n == 0 ? 0 : static_cast<Config>((std::uint64_t{1} << n) - 1); }

// Largest-remainder rounding of a probability table to integers summing to
// exactly kTotalUnits.
std::vector<Units> to_units(std::span<const double> table) {
  std::vector<Units> units(table.size());
  std::vector<std::pair<double, std::size_t>> remainders(table.size());
  Units assigned = 0;
  for (std::size_t x = 0; x < table.size(); ++x) {
    const double scaled = table[x] * kFlowScale;
    units[x] = static_cast<Units>(std::floor(scaled));
    remainders[x] = {scaled - static_cast<double>(units[x]), x};
    assigned += units[x];
  }
  std::sort(remainders.begin(), remainders.end(), std::greater<>());
  Units missing = kTotalUnits - assigned;
  for (std::size_t k = 0; missing > 0 && k < remainders.size(); ++k, --missing) {
    ++units[remainders[k].second];
  }
  // Tables summing slightly above 1 leave a surplus; trim the largest cells.
  while (missing < 0) {
    auto it = std::max_element(units.begin(), units.end());
    const Units take = std::min<Units>(*it, -missing);
    *it -= take;
    missing += take;
  }
  return units;
}

struct Transport {
  Units flow = 0;
  MaxFlow network;
  std::vector<std::tuple<Config, Config, std::size_t>> arcs;
};

// Nodes: 0 source, 1 sink, 2 + x lower side, 2 + 2^n + y upper side.
Transport solve_transport(const Measure& lower, const Measure& upper) {
  if (lower.num_coordinates() != upper.num_coordinates()) {
    throw InvalidArgument("domination: measures differ in dimension");
  }
  const std::size_t n = lower.num_coordinates();
  if (n > kMaxFlowCoordinates) {
    throw SizeLimitExceeded(
        fmt::format("domination: n = {} exceeds the flow cap of {}", n, kMaxFlowCoordinates));
  }
  const std::size_t size = std::size_t{1} << n;
  const std::vector<Units> supply = to_units(lower.table());
  const std::vector<Units> demand = to_units(upper.table());

  Transport t{0, MaxFlow(2 + 2 * size), {}};
  for (std::size_t x = 0; x < size; ++x) {
    if (supply[x] > 0) t.network.add_arc(0, 2 + x, supply[x]);
    if (demand[x] > 0) t.network.add_arc(2 + size + x, 1, demand[x]);
  }
  const Config all = full_mask(n);
  for (std::size_t x = 0; x < size; ++x) {
    if (supply[x] == 0) continue;
    // Enumerate supersets y of x.
    const Config free = all & ~static_cast<Config>(x);
    for (Config sub = free;; sub = (sub - 1) & free) {
      const Config y = static_cast<Config>(x) | sub;
      if (demand[y] > 0) {
        const std::size_t id = t.network.add_arc(2 + x, 2 + size + y, MaxFlow::kInfinite);
        t.arcs.emplace_back(static_cast<Config>(x), y, id);
      }
      if (sub == 0) break;
    }
  }
  t.flow = t.network.solve(0, 1);
  return t;
}

Units slack_units(std::size_t n, double tol) {
  return static_cast<Units>(std::size_t{1} << n) + static_cast<Units>(std::llround(tol * kFlowScale));
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(fmt::format("{}: {} is not a probability", what, p));
}

}  // namespace

bool is_increasing(const Event& e) {
  const std::size_t n = e.num_coordinates();
  const std::size_t size = std::size_t{1} << n;
  for (std::size_t x = 0; x < size; ++x) {
    if (!e.contains(static_cast<Config>(x))) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (!e.contains(static_cast<Config>(x | (std::size_t{1} << k)))) return false;
    }
  }
  return true;
}

std::vector<Event> enumerate_up_sets(std::size_t n) {
  if (n > kMaxUpSetCoordinates) {
    throw SizeLimitExceeded(fmt::format("enumerate_up_sets: n = {} exceeds {}", n, kMaxUpSetCoordinates));
  }
  // An up-set on n coordinates splits by the last coordinate into up-sets
  // A ⊆ B on n − 1 coordinates (A: last bit 0, B: last bit 1). Membership is
  // kept as a 2^n-bit word.
  std::vector<std::uint32_t> sets = {0u, 1u};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t half = std::size_t{1} << k;
    std::vector<std::uint32_t> next;
    for (std::uint32_t a : sets) {
      for (std::uint32_t b : sets) {
        if ((a & ~b) == 0) next.push_back(a | static_cast<std::uint32_t>(std::uint64_t{b} << half));
      }
    }
    sets = std::move(next);
  }
  std::vector<Event> out;
  out.reserve(sets.size());
  const std::size_t size = std::size_t{1} << n;
  for (std::uint32_t s : sets) {
    std::vector<std::uint8_t> members(size);
    for (std::size_t x = 0; x < size; ++x) members[x] = (s >> x) & 1u;
    out.emplace_back(n, std::move(members));
  }
  return out;
}

bool dominates(const Measure& upper, const Measure& lower, double tol) {
  const Transport t = solve_transport(lower, upper);
  return t.flow >= kTotalUnits - slack_units(lower.num_coordinates(), tol);
}

std::vector<double> Coupling::lower_marginal() const {
  std::vector<double> m(std::size_t{1} << n, 0.0);
  for (const CouplingEntry& e : entries) m[e.lower] += e.mass;
  return m;
}

std::vector<double> Coupling::upper_marginal() const {
  std::vector<double> m(std::size_t{1} << n, 0.0);
  for (const CouplingEntry& e : entries) m[e.upper] += e.mass;
  return m;
}

double Coupling::total_mass() const {
  double total = 0.0;
  for (const CouplingEntry& e : entries) total += e.mass;
  return total;
}

Coupling extract_coupling(const Measure& lower, const Measure& upper) {
  const Transport t = solve_transport(lower, upper);
  if (t.flow < kTotalUnits - slack_units(lower.num_coordinates(), kDefaultTolerance)) {
    throw NotDominated(fmt::format("extract_coupling: transport covers only {:.12f} of the mass",
                                   static_cast<double>(t.flow) / kFlowScale));
  }
  Coupling c;
  c.n = lower.num_coordinates();
  for (const auto& [x, y, id] : t.arcs) {
    const Units f = t.network.flow(id);
    if (f > 0) c.entries.push_back({x, y, static_cast<double>(f) / kFlowScale});
  }
  return c;
}

bool is_valid_coupling(const Coupling& c, const Measure& lower, const Measure& upper, double tol) {
  if (c.n != lower.num_coordinates() || c.n != upper.num_coordinates()) return false;
  for (const CouplingEntry& e : c.entries) {
    if ((e.lower & ~e.upper) != 0 || e.mass < 0.0) return false;
  }
  if (std::abs(c.total_mass() - 1.0) > tol) return false;
  const auto lm = c.lower_marginal();
  const auto um = c.upper_marginal();
  for (std::size_t x = 0; x < lm.size(); ++x) {
    if (std::abs(lm[x] - lower.mass(static_cast<Config>(x))) > tol) return false;
    if (std::abs(um[x] - upper.mass(static_cast<Config>(x))) > tol) return false;
  }
  return true;
}

void write_coupling(std::ostream& out, const Coupling& c) {
  for (const CouplingEntry& e : c.entries) {
    out << config_string(e.lower, c.n) << ' ' << config_string(e.upper, c.n)
        << fmt::format(" {:.17g}\n", e.mass);
  }
}

bool holley_check(const Measure& m, double eta, std::span<const Vertex> order, double tol) {
  const std::size_t n = m.num_coordinates();
  if (n > kMaxEnumerationCoordinates) {
    throw SizeLimitExceeded(fmt::format("holley_check: n = {} exceeds {}", n, kMaxEnumerationCoordinates));
  }
  check_probability(eta, "holley_check: eta");
  if (order.size() != n) throw InvalidArgument("holley_check: order must list every coordinate once");
  Config seen = 0;
  for (Vertex v : order) {
    if (v >= n || ((seen >> v) & 1u)) throw InvalidArgument("holley_check: order is not a permutation");
    const ConditionalRange r = scan_conditionals(m, v, seen);
    if (!r.empty() && r.min < eta - tol) return false;
    seen |= Config{1} << v;
  }
  return true;
}

bool fkg_check(const Measure& m, const Event& e1, const Event& e2, double tol) {
  if (m.form() != Measure::Form::product) throw InvalidArgument("fkg_check: measure must be a product measure");
  if (!is_increasing(e1) || !is_increasing(e2)) throw InvalidArgument("fkg_check: events must be increasing");
  return prob(m, e1 & e2) >= prob(m, e1) * prob(m, e2) - tol;
}

LllResult lll_verify(const LllInstance& inst, double tol) {
  const std::size_t n = inst.measure.num_coordinates();
  if (n > kMaxFlowCoordinates) {
    throw SizeLimitExceeded(fmt::format("lll_verify: n = {} exceeds {}", n, kMaxFlowCoordinates));
  }
  if (inst.graph.num_vertices() != n || inst.r.size() != n) {
    throw InvalidArgument("lll_verify: measure, graph and r must agree in dimension");
  }
  for (double r : inst.r) {
    if (!(r >= 0.0 && r < 1.0)) throw InvalidArgument(fmt::format("lll_verify: r = {} outside [0, 1)", r));
  }
  const Config all = full_mask(n);
  const auto closed = closed_out_masks(inst.graph);

  LllResult out;
  out.condition_holds = true;
  for (std::size_t i = 0; i < n; ++i) {
    double allowance = inst.r[i];
    for (Vertex j : inst.graph.successors(static_cast<Vertex>(i))) allowance *= 1.0 - inst.r[j];
    const ConditionalRange range = scan_conditionals_given_zeros(inst.measure, i, all & ~closed[i]);
    if (!range.empty() && range.max > allowance + tol) {
      out.condition_holds = false;
      break;
    }
  }
  out.bound = 1.0;
  for (double r : inst.r) out.bound *= 1.0 - r;
  out.exact = failure_free_prob(inst.measure);
  out.conclusion_holds = out.exact >= out.bound - tol;
  return out;
}

Measure lss_construct(const Measure& mu, double lambda) {
  const std::size_t n = mu.num_coordinates();
  if (n > kMaxEnumerationCoordinates) {
    throw SizeLimitExceeded(fmt::format("lss_construct: n = {} exceeds {}", n, kMaxEnumerationCoordinates));
  }
  check_probability(lambda, "lss_construct: lambda");
  // Thinning one coordinate at a time: a 1 survives with probability λ.
  std::vector<double> table(mu.table().begin(), mu.table().end());
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t bit = std::size_t{1} << k;
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (x & bit) {
        table[x ^ bit] += (1.0 - lambda) * table[x];
        table[x] *= lambda;
      }
    }
  }
  return Measure::dense(n, std::move(table));
}

bool verify_zdom(const Measure& z_law, double alpha, double lambda, double tol) {
  const std::size_t n = z_law.num_coordinates();
  if (n > kMaxFlowCoordinates) {
    throw SizeLimitExceeded(fmt::format("verify_zdom: n = {} exceeds {}", n, kMaxFlowCoordinates));
  }
  const double floor = alpha * lambda - tol;
  const Config all = full_mask(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ConditionalRange r = scan_conditionals(z_law, i, all & ~(Config{1} << i));
    if (!r.empty() && r.min < floor) return false;
  }
  return true;
}

AppendixCheck check_appendix_theorem(const Dag& g, const Measure& mu, double eta, double tol) {
  const std::size_t n = mu.num_coordinates();
  if (n > kMaxFlowCoordinates) {
    throw SizeLimitExceeded(fmt::format("verify_appendix_theorem: n = {} exceeds {}", n, kMaxFlowCoordinates));
  }
  check_probability(eta, "verify_appendix_theorem: eta");
  if (!is_in_w(mu, g, eta, tol)) {
    throw PreconditionFailed("verify_appendix_theorem: mu is not in W^G_eta for the given graph");
  }
  AppendixCheck out;
  // A graph of out-degree 0 also has out-degree at most 1.
  out.delta = std::max<std::size_t>(1, g.max_out_degree());
  out.eps = 1.0 - eta;
  const double threshold = theta(static_cast<double>(out.delta) + 1.0);
  if (out.eps > threshold + tol) {
    throw PreconditionFailed(fmt::format(
        "verify_appendix_theorem: eps = {:.17g} exceeds Delta^Delta/(Delta+1)^(Delta+1) = {:.17g}",
        out.eps, threshold));
  }
  const RhoParams p = rho(out.delta, std::min(out.eps, threshold));
  out.alpha = p.alpha;
  out.lambda = p.lambda;
  out.rho = p.rho;
  out.dominated = dominates(mu, Measure::product(std::vector<double>(n, p.rho)), tol);
  return out;
}

bool verify_appendix_theorem(const Dag& g, const Measure& mu, double eta, double tol) {
  return check_appendix_theorem(g, mu, eta, tol).dominated;
}

}  // namespace pfm
