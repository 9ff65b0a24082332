#include "pfm/formulas.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "pfm/errors.hpp"

namespace pfm {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(fmt::format("{}: {} is not a probability", what, p));
}

}  // namespace

double theta(double x) {
  if (!(x >= 1.0)) throw InvalidArgument(fmt::format("theta: x = {} < 1", x));
  if (x == 1.0) return 1.0;
  return std::exp((x - 1.0) * std::log(x - 1.0) - x * std::log(x));
}

double f_epsilon_exact(std::uint64_t n, double eps) {
  check_probability(eps, "f_epsilon_exact: eps");
  if (n == 0) return 1.0;
  if (eps == 1.0) return 0.0;
  return std::exp(static_cast<double>(n) * std::log1p(-eps));
}

double phase_limit(double c) {
  if (!(c >= 0.0)) throw InvalidArgument(fmt::format("phase_limit: c = {} < 0", c));
  if (c <= 1.0) return 0.0;
  return std::exp(-c / (std::numbers::e * (c - 1.0)));
}

double lll_lower_bound(std::uint64_t delta, std::uint64_t n) {
  return f_epsilon_exact(n, 1.0 / (static_cast<double>(delta) + 1.0));
}

double f_g_exact(std::uint64_t delta, std::uint64_t n) {
  return f_epsilon_exact(n, theta(static_cast<double>(delta) + 1.0));
}

bool PtWindow::contains(double gamma_star) const {
  if (regime == Regime::subcritical) return lo < gamma_star && gamma_star <= hi;
  return lo <= gamma_star && gamma_star <= hi;
}

std::string_view regime_name(PtWindow::Regime r) {
  return r == PtWindow::Regime::subcritical ? "subcritical" : "critical-or-super";
}

PtWindow pittel_tungol_window(std::uint64_t n, double c, double a, double kappa) {
  if (n < 16) throw InvalidArgument(fmt::format("pittel_tungol_window: n = {} < 16", n));
  if (!(c >= 0.0)) throw InvalidArgument("pittel_tungol_window: c must be nonnegative");
  if (!(a > 0.0)) throw InvalidArgument("pittel_tungol_window: A must be positive");
  if (!(kappa > 0.0 && kappa < 1.0)) throw InvalidArgument("pittel_tungol_window: kappa must lie in (0, 1)");
  const double nn = static_cast<double>(n);
  const double log_n = std::log(nn);
  PtWindow w;
  w.a = a;
  w.kappa = kappa;
  if (c >= 1.0) {
    w.regime = PtWindow::Regime::critical_or_super;
    const double center = nn * (1.0 - 1.0 / c) + 2.0 * nn * std::log(log_n) / (c * log_n);
    const double half = a * nn / log_n;
    w.lo = center - half;
    w.hi = center + half;
  } else {
    w.regime = PtWindow::Regime::subcritical;
    w.hi = std::pow(nn, c) * log_n;
    w.lo = (1.0 - kappa) * w.hi;
  }
  return w;
}

double majority_bound(double eta, std::uint64_t a, std::uint64_t d) {
  check_probability(eta, "majority_bound: eta");
  if (eta < 0.5) throw InvalidArgument(fmt::format("majority_bound: eta = {} < 1/2", eta));
  const double s = 4.0 * eta - 2.0;
  const double factor = -std::expm1(-static_cast<double>(a) * s * s);
  return eta * std::pow(factor, static_cast<double>(d));
}

RhoParams rho(std::uint64_t delta, double eps) {
  if (delta < 1) throw InvalidArgument("rho: delta must be at least 1");
  check_probability(eps, "rho: eps");
  const double d = static_cast<double>(delta);
  const double threshold = theta(d + 1.0);
  if (eps > threshold * (1.0 + 1e-12)) {
    throw PreconditionFailed(fmt::format(
        "rho: eps = {:.17g} exceeds Delta^Delta/(Delta+1)^(Delta+1) = {:.17g} for Delta = {}", eps,
        threshold, delta));
  }
  RhoParams out;
  out.alpha = 1.0 - std::pow(eps, 1.0 / (d + 1.0)) / std::pow(d, d / (d + 1.0));
  out.lambda = 1.0 - std::pow(eps * d, 1.0 / (d + 1.0));
  out.rho = out.alpha * out.lambda;
  return out;
}

double programmer_threshold() {
  const double k = std::numbers::e * std::numbers::ln2;
  return k / (k - 1.0);
}

GameParams game_parameters(double eps0) {
  if (!(eps0 > 0.0 && eps0 < 1.0)) {
    throw InvalidArgument(fmt::format("game_parameters: eps0 = {} outside (0, 1)", eps0));
  }
  // Both inequalities are evaluated exactly as written so the returned pair
  // satisfies them in floating point too.
  auto density_ok = [](std::uint64_t n0, double c) {
    const double nn = static_cast<double>(n0);
    return c * std::log(nn) / nn <= 1.0;
  };
  auto eps_ok = [eps0](std::uint64_t n0, double c) {
    return eps0 <= 1.0 / (std::numbers::e * (1.0 - 1.0 / c) * static_cast<double>(n0));
  };
  auto densest = [&](std::uint64_t n0) {
    const double nn = static_cast<double>(n0);
    double c = nn / std::log(nn);
    while (!density_ok(n0, c)) c = std::nextafter(c, 0.0);
    return c;
  };
  auto feasible = [&](std::uint64_t n0) { return eps_ok(n0, densest(n0)); };

  GameParams out;
  out.eps0 = eps0;
  if (feasible(2)) {
    // n0 − ln n0 grows with n0, so feasibility is a prefix of the integers.
    constexpr std::uint64_t kCap = std::uint64_t{1} << 53;
    std::uint64_t good = 2;
    std::uint64_t bad = 4;
    while (bad < kCap && feasible(bad)) {
      good = bad;
      bad *= 2;
    }
    if (bad >= kCap && feasible(kCap)) {
      good = kCap;
    } else {
      while (bad - good > 1) {
        const std::uint64_t mid = good + (bad - good) / 2;
        (feasible(mid) ? good : bad) = mid;
      }
    }
    out.n0 = good;
    out.c = densest(good);
  } else {
    out.n0 = 2;
    double c = 1.0 / (1.0 - 1.0 / (2.0 * std::numbers::e * eps0));
    while (!eps_ok(2, c) || !density_ok(2, c)) c = std::nextafter(c, 1.0);
    out.c = c;
  }
  out.delta_margin = phase_limit(out.c) - 0.5;
  return out;
}

}  // namespace pfm
