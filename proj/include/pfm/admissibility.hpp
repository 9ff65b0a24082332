#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "pfm/closure.hpp"
#include "pfm/dag.hpp"
#include "pfm/measure.hpp"

namespace pfm {

// Membership checks enumerate 3^(n-1) conditioning events per vertex; they
// refuse measures on more coordinates than this.
inline constexpr std::size_t kMaxEnumerationCoordinates = 12;

// Number of shrinking perturbations tried by AdmissibleStrategy::perturb_verify
// before giving up.
inline constexpr int kPerturbRetryBudget = 64;

// μ ∈ M_ε: for every vertex i and every assignment on disjoint Y, Y′ outside
// Γ*(i) with positive probability, P(ω(i) = 1 | assignment) <= eps + tol.
bool is_epsilon_admissible(const Measure& m, const Closure& c, double eps,
                           double tol = kDefaultTolerance);

// μ ∈ W^G_η: every positive-probability conditional of ω(i) = 1 given an
// assignment outside the closed out-neighbourhood N̄(i) of `g` is >= eta − tol.
bool is_in_w(const Measure& m, const Dag& g, double eta, double tol = kDefaultTolerance);

// Same, for the closure graph G* (N̄*(i) = Γ*(i)).
bool is_in_w(const Measure& m, const Closure& c, double eta, double tol = kDefaultTolerance);

enum class AdmissibleStrategy { mixture, perturb_verify };

AdmissibleStrategy parse_admissible_strategy(std::string_view name);

// Random member of M_ε for the given closure, deterministic in the seed.
//
// mixture: 1 to 4 product components with every parameter drawn from
// [0, eps]; each conditional is a convex combination of component marginals,
// so the result is admissible by construction.
// perturb_verify: multiplicative noise on a mixture's dense table, halving the
// noise until is_epsilon_admissible(·, c, eps, 1e-9) accepts. Throws Error
// after kPerturbRetryBudget rejections.
Measure sample_admissible(const Closure& c, double eps, std::uint64_t seed,
                          AdmissibleStrategy strategy = AdmissibleStrategy::mixture);

}  // namespace pfm
