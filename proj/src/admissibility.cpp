#include "pfm/admissibility.hpp"

#include <random>
#include <span>
#include <vector>

#include <fmt/core.h>

#include "pfm/conditionals.hpp"
#include "pfm/errors.hpp"
#include "pfm/generators.hpp"
#include "pfm/rng.hpp"

namespace pfm {

namespace {

void check_enumerable(const Measure& m, std::size_t graph_n, const char* what) {
  if (m.num_coordinates() != graph_n) {
    throw InvalidArgument(fmt::format("{}: measure has {} coordinates, graph has {} vertices", what,
                                      m.num_coordinates(), graph_n));
  }
  if (graph_n > kMaxEnumerationCoordinates) {
    throw SizeLimitExceeded(fmt::format("{}: n = {} exceeds the enumeration cap of {}", what,
                                        graph_n, kMaxEnumerationCoordinates));
  }
}

Config full_mask(std::size_t n) { return n == 0 ? 0 : static_cast<Config>((std::uint64_t{1} << n) - 1); }

// Every conditional outside the given closed neighbourhoods is <= bound.
bool conditionals_at_most(const Measure& m, std::span<const std::uint32_t> closed, double bound) {
  const Config all = full_mask(m.num_coordinates());
  for (std::size_t i = 0; i < closed.size(); ++i) {
    const ConditionalRange r = scan_conditionals(m, i, all & ~closed[i]);
    if (!r.empty() && r.max > bound) return false;
  }
  return true;
}

bool conditionals_at_least(const Measure& m, std::span<const std::uint32_t> closed, double bound) {
  const Config all = full_mask(m.num_coordinates());
  for (std::size_t i = 0; i < closed.size(); ++i) {
    const ConditionalRange r = scan_conditionals(m, i, all & ~closed[i]);
    if (!r.empty() && r.min < bound) return false;
  }
  return true;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(fmt::format("{}: {} is not a probability", what, p));
}

}  // namespace

bool is_epsilon_admissible(const Measure& m, const Closure& c, double eps, double tol) {
  check_enumerable(m, c.num_vertices(), "is_epsilon_admissible");
  check_probability(eps, "is_epsilon_admissible: eps");
  return conditionals_at_most(m, c.masks(), eps + tol);
}

bool is_in_w(const Measure& m, const Dag& g, double eta, double tol) {
  check_enumerable(m, g.num_vertices(), "is_in_w");
  check_probability(eta, "is_in_w: eta");
  return conditionals_at_least(m, closed_out_masks(g), eta - tol);
}

bool is_in_w(const Measure& m, const Closure& c, double eta, double tol) {
  check_enumerable(m, c.num_vertices(), "is_in_w");
  check_probability(eta, "is_in_w: eta");
  return conditionals_at_least(m, c.masks(), eta - tol);
}

AdmissibleStrategy parse_admissible_strategy(std::string_view name) {
  if (name == "mixture") return AdmissibleStrategy::mixture;
  if (name == "perturb-verify") return AdmissibleStrategy::perturb_verify;
  throw InvalidArgument(fmt::format("unknown admissible strategy \"{}\"", name));
}

Measure sample_admissible(const Closure& c, double eps, std::uint64_t seed,
                          AdmissibleStrategy strategy) {
  const std::size_t n = c.num_vertices();
  if (n > kMaxEnumerationCoordinates) {
    throw SizeLimitExceeded(fmt::format("sample_admissible: n = {} exceeds the cap of {}", n,
                                        kMaxEnumerationCoordinates));
  }
  check_probability(eps, "sample_admissible: eps");
  Rng rng(seed);
  Measure base = random_product_mixture(n, 0.0, eps, rng);
  if (strategy == AdmissibleStrategy::mixture) return base;

  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  const auto t = base.table();
  double scale = 0.5;
  for (int attempt = 0; attempt < kPerturbRetryBudget; ++attempt, scale *= 0.5) {
    std::vector<double> table(t.begin(), t.end());
    double total = 0.0;
    for (double& v : table) {
      v *= 1.0 + scale * noise(rng);
      total += v;
    }
    for (double& v : table) v /= total;
    Measure candidate = Measure::dense(n, std::move(table));
    if (is_epsilon_admissible(candidate, c, eps, kDefaultTolerance)) return candidate;
  }
  throw Error(fmt::format("sample_admissible: perturb-verify rejected {} candidates",
                          kPerturbRetryBudget));
}

}  // namespace pfm
