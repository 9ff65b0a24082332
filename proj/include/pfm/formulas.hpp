#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace pfm {

// Closed-form quantities. Logarithms are natural throughout, and powers of
// near-one numbers go through exp(n·log1p(−x)).

// ϑ(x) = (x−1)^(x−1) / x^x for x >= 1, with ϑ(1) = 1. Throws InvalidArgument
// for x < 1.
double theta(double x);

// (1 − eps)^n: the least failure-free probability over ε-admissible laws on a
// DAG with n vertices.
double f_epsilon_exact(std::uint64_t n, double eps);

// Limit of F_n(c): 0 for c <= 1, exp(−c / (e(c − 1))) for c > 1.
double phase_limit(double c);

// (1 − 1/(Δ+1))^n.
double lll_lower_bound(std::uint64_t delta, std::uint64_t n);

// (1 − Δ^Δ/(Δ+1)^(Δ+1))^n.
double f_g_exact(std::uint64_t delta, std::uint64_t n);

struct PtWindow {
  enum class Regime { subcritical, critical_or_super };

  double lo = 0.0;
  double hi = 0.0;
  Regime regime = Regime::subcritical;
  double a = 1.0;      // half-width constant for c >= 1
  double kappa = 0.1;  // relative slack for c < 1

  double center() const { return 0.5 * (lo + hi); }
  bool contains(double gamma_star) const;
};

std::string_view regime_name(PtWindow::Regime r);

// Heuristic defaults; only the existence of such constants is known.
inline constexpr double kDefaultWindowA = 1.0;
inline constexpr double kDefaultWindowKappa = 0.1;

// Whp window for γ*_n of G_d(n, c·ln(n)/n).
//   c >= 1: n(1 − 1/c) + 2n·lnln(n)/(c·ln n) ± a·n/ln(n)
//   c <  1: [(1 − kappa)·n^c·ln n, n^c·ln n]
// Containment is lo <= γ* <= hi for c >= 1 and lo < γ* <= hi for c < 1.
// Requires n >= 16, a > 0, kappa ∈ (0, 1).
PtWindow pittel_tungol_window(std::uint64_t n, double c, double a = kDefaultWindowA,
                              double kappa = kDefaultWindowKappa);

// η(1 − exp(−a(4η − 2)²))^d, valid for η >= 1/2.
double majority_bound(double eta, std::uint64_t a, std::uint64_t d);

struct RhoParams {
  double alpha = 1.0;
  double lambda = 1.0;
  double rho = 1.0;
};

// α = 1 − ε^(1/(Δ+1)) / Δ^(Δ/(Δ+1)), λ = 1 − (εΔ)^(1/(Δ+1)), ρ = αλ, so that
// (1 − α)(1 − λ)^Δ = ε. Requires Δ >= 1 and ε <= Δ^Δ/(Δ+1)^(Δ+1).
RhoParams rho(std::uint64_t delta, double eps);

struct GameParams {
  double eps0 = 0.0;
  std::uint64_t n0 = 0;
  double c = 0.0;
  double delta_margin = 0.0;  // phase_limit(c) − 1/2
};

// Network size and density for the Programmer against a referee's ε0.
// Returns the largest n0 >= 2 such that ε0 <= 1/(e(1 − 1/c)n0) with
// c = n0/ln(n0), the largest density keeping c·ln(n0)/n0 <= 1. When even
// n0 = 2 fails (ε0 > 1/(e(2 − ln 2))), n0 = 2 is kept and c is lowered to
// the largest value satisfying the ε0 inequality.
GameParams game_parameters(double eps0);

// c at which phase_limit(c) = 1/2: e·ln2 / (e·ln2 − 1).
double programmer_threshold();

}  // namespace pfm
