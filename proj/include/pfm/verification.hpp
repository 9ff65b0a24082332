#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pfm {

// Randomized property suites over the measure and domination engines.
//
//   admissible  mixture members of M_ε on random DAGs (n <= 8): membership,
//               failure-free lower bound (1−ε)^n and its attainment by π_ε,
//               complement duality into W on G*, Holley along a linear
//               extension, μ ⪯_s π_ε.
//   domination  random dense pairs on n = 4: flow-based dominates() against
//               all 168 increasing events; extracted couplings are valid.
//   holley      measures passing holley_check(η = 0.8), n <= 5, dominate π_η.
//   fkg         increasing-event pairs under random product measures
//               (sampled on n = 5, exhaustive on n = 3 for the first cases).
//   lll         admissible instances with r_i = 1/(Δ+1): local condition and
//               conclusion of the lopsided local lemma.
//   appendix    W-member mixtures, Δ ∈ {1, 2}, n <= 6, ε on the threshold:
//               μ ⪰_s π_ρ, Z-domination of the thinned law, α/λ conditions.
//   majority    depth-2 networks of d = 3 disjoint subnetworks of a gates,
//               Monte Carlo P(majority alive) under π_ε against the bound.
enum class Suite { admissible, domination, holley, fkg, lll, appendix, majority };

Suite parse_suite(std::string_view name);
std::string_view suite_name(Suite s);

struct SuiteOptions {
  std::uint64_t majority_samples = 100'000;
  double majority_eps = 0.1;
  unsigned threads = 0;
};

struct CaseFailure {
  std::size_t case_index = 0;
  std::uint64_t seed = 0;
  std::string message;
  std::string instance;  // serialized inputs for replay
};

struct SuiteReport {
  Suite suite = Suite::admissible;
  std::size_t cases = 0;
  std::vector<CaseFailure> failures;
  std::vector<std::string> notes;  // one summary line per noteworthy statistic

  bool passed() const { return failures.empty(); }
};

// Runs `cases` instances; case k draws from derive_seed(seed, k). Throws
// InvalidArgument when cases == 0.
SuiteReport run_verification_suite(Suite suite, std::size_t cases, std::uint64_t seed,
                                   const SuiteOptions& options = {});

void write_report(std::ostream& out, const SuiteReport& report);

}  // namespace pfm
