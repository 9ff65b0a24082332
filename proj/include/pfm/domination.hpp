#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pfm/dag.hpp"
#include "pfm/measure.hpp"

namespace pfm {

// Width caps for the exact engines below.
inline constexpr std::size_t kMaxFlowCoordinates = 10;
inline constexpr std::size_t kMaxUpSetCoordinates = 5;

// Probabilities are converted to integers at this resolution before the
// max-flow runs. The masses of each measure are rounded so that they sum to
// exactly kFlowScale units.
inline constexpr double kFlowScale = 1e12;

// True iff flipping any 0 to a 1 never leaves the event.
bool is_increasing(const Event& e);

// Every increasing event (up-set) of {0,1}^n, empty and full included.
// There are 2, 3, 6, 20, 168, 7581 of them for n = 0..5. Used as a brute-force
// reference for dominates().
std::vector<Event> enumerate_up_sets(std::size_t n);

// lower ⪯_s upper, decided as transport feasibility: supplies lower(ω),
// demands upper(ω′), arcs only where ω ≤ ω′. The pair is accepted when the
// max flow falls short of the total by at most 2^n units plus tol.
//
// The shortfall equals max over up-sets U of lower(U) − upper(U), so the
// answer agrees with checking every increasing event up to that slack.
// Throws SizeLimitExceeded for n > kMaxFlowCoordinates.
bool dominates(const Measure& upper, const Measure& lower, double tol = kDefaultTolerance);

struct CouplingEntry {
  Config lower = 0;
  Config upper = 0;
  double mass = 0.0;
};

// Joint law of (ω, ω′) with ω ≤ ω′ componentwise.
struct Coupling {
  std::size_t n = 0;
  std::vector<CouplingEntry> entries;

  std::vector<double> lower_marginal() const;
  std::vector<double> upper_marginal() const;
  double total_mass() const;
};

// One monotone coupling of lower ⪯_s upper, read off a maximum flow. Throws
// NotDominated when no such coupling exists.
Coupling extract_coupling(const Measure& lower, const Measure& upper);

// Support ordered, marginals equal to lower and upper, total mass 1, all
// within tol.
bool is_valid_coupling(const Coupling& c, const Measure& lower, const Measure& upper,
                       double tol = kDefaultTolerance);

// Lines "omega omega' mass", configurations as binary strings.
void write_coupling(std::ostream& out, const Coupling& c);

// Holley-type sufficient condition for m ⪰_s π_η: along `order`, every
// positive-probability conditional of ω(i) = 1 given any assignment on any
// set of earlier vertices is >= eta − tol.
bool holley_check(const Measure& m, double eta, std::span<const Vertex> order,
                  double tol = kDefaultTolerance);

// P(e1 ∩ e2) >= P(e1) P(e2) − tol. Requires a product measure and two
// increasing events; throws InvalidArgument otherwise.
bool fkg_check(const Measure& m, const Event& e1, const Event& e2, double tol = kDefaultTolerance);

// Bad events H_i = {ω(i) = 1} under `measure`, with dependency digraph
// `graph` and weights r_i ∈ [0, 1).
struct LllInstance {
  Measure measure;
  Dag graph;
  std::vector<double> r;
};

struct LllResult {
  bool condition_holds = false;   // local condition at every vertex
  double bound = 0.0;             // Π (1 − r_i)
  double exact = 0.0;             // P(no H_i occurs)
  bool conclusion_holds = false;  // exact >= bound − tol
};

// Checks P(H_i | ∩_{j∈Y} H̄_j) <= r_i Π_{j∈N(i)} (1 − r_j) + tol for every i
// and every Y outside N̄(i), skipping zero-probability conditions, and
// reports the guaranteed bound next to the exact probability.
LllResult lll_verify(const LllInstance& inst, double tol = kDefaultTolerance);

// Exact law of Z = X·Y (coordinatewise) for X ~ mu and an independent
// Y ~ π_λ.
Measure lss_construct(const Measure& mu, double lambda);

// Every positive-probability conditional P(Z_i = 1 | Z_Y = z) over all
// Y ⊆ V∖{i} and all z is >= alpha·lambda − tol.
bool verify_zdom(const Measure& z_law, double alpha, double lambda,
                 double tol = kDefaultTolerance);

struct AppendixCheck {
  std::size_t delta = 0;  // max out-degree of g, at least 1
  double eps = 0.0;
  double alpha = 0.0;
  double lambda = 0.0;
  double rho = 0.0;
  bool dominated = false;  // π_ρ ⪯_s mu
};

// For mu ∈ W^G_η with ε = 1 − η below the Δ^Δ/(Δ+1)^(Δ+1) threshold
// (Δ = max out-degree of g), mu must dominate π_ρ. Throws PreconditionFailed
// naming the hypothesis that does not hold.
AppendixCheck check_appendix_theorem(const Dag& g, const Measure& mu, double eta,
                                     double tol = kDefaultTolerance);

bool verify_appendix_theorem(const Dag& g, const Measure& mu, double eta,
                             double tol = kDefaultTolerance);

}  // namespace pfm
