#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pfm/admissibility.hpp"
#include "pfm/closure.hpp"
#include "pfm/conditionals.hpp"
#include "pfm/errors.hpp"
#include "pfm/generators.hpp"
#include "pfm/measure.hpp"

using namespace pfm;

namespace {

// Every assignment {ω_Y = 1, ω_Y′ = 0} with Y, Y′ disjoint subsets of the
// coordinates in `outside`, built as explicit events.
std::vector<Event> conditioning_events(std::size_t n, const std::vector<std::size_t>& outside) {
  std::vector<Event> out;
  std::size_t count = 1;
  for (std::size_t k = 0; k < outside.size(); ++k) count *= 3;
  for (std::size_t code = 0; code < count; ++code) {
    Event e = Event::full(n);
    std::size_t c = code;
    for (std::size_t j : outside) {
      const std::size_t digit = c % 3;
      c /= 3;
      if (digit == 1) e = e & Event::coordinate(n, j, true);
      if (digit == 2) e = e & Event::coordinate(n, j, false);
    }
    out.push_back(e);
  }
  return out;
}

// max (or min) of P(ω(i) = 1 | C) over events C on coordinates outside
// `excluded(i)`, skipping P(C) = 0.
template <class Excluded>
double extreme_conditional(const Measure& m, bool want_max, Excluded excluded) {
  const std::size_t n = m.num_coordinates();
  double best = want_max ? 0.0 : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> outside;
    for (std::size_t j = 0; j < n; ++j) {
      if (!excluded(i, j)) outside.push_back(j);
    }
    for (const Event& c : conditioning_events(n, outside)) {
      if (prob(m, c) <= 0.0) continue;
      const double v = conditional(m, Event::coordinate(n, i, true), c);
      best = want_max ? std::max(best, v) : std::min(best, v);
    }
  }
  return best;
}

bool oracle_admissible(const Measure& m, const Closure& c, double eps) {
  return extreme_conditional(m, true, [&](std::size_t i, std::size_t j) {
           return c.reaches(static_cast<Vertex>(i), static_cast<Vertex>(j));
         }) <= eps + kDefaultTolerance;
}

bool oracle_in_w(const Measure& m, const Dag& g, double eta) {
  return extreme_conditional(m, false, [&](std::size_t i, std::size_t j) {
           return i == j || g.has_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
         }) >= eta - kDefaultTolerance;
}

Closure path3() { return transitive_closure(Dag::from_edges(3, {{0, 1}, {1, 2}})); }

}  // namespace

TEST_CASE("product measures") {
  const Measure half = product_measure({0.5, 0.5});
  CHECK(half.mass(0b11) == doctest::Approx(0.25));
  const Measure zero = product_measure({0.0, 0.0, 0.0});
  CHECK(zero.mass(0) == 1.0);
  // ω = 10: coordinate 1 failed, coordinate 2 not.
  CHECK(product_measure({0.2, 0.7}).mass(parse_config("10")) == doctest::Approx(0.06).epsilon(1e-12));
  CHECK_THROWS_AS(product_measure({0.5, 1.2}), InvalidArgument);
}

TEST_CASE("config strings put coordinate 1 first") {
  CHECK(parse_config("10") == 0b01);
  CHECK(config_string(0b01, 2) == "10");
  CHECK(config_string(parse_config("0110"), 4) == "0110");
}

TEST_CASE("mixtures") {
  const Measure one = mixture({1.0}, {product_measure({0.3, 0.6})});
  CHECK(tv_distance(one, product_measure({0.3, 0.6})) < 1e-15);
  const Measure coin = mixture({0.5, 0.5}, {product_measure({0.0}), product_measure({1.0})});
  CHECK(coin.mass(0) == doctest::Approx(0.5));
  CHECK(coin.mass(1) == doctest::Approx(0.5));
  const Measure m = mixture({0.5, 0.5}, {product_measure({0.05, 0.05}), product_measure({0.1, 0.1})});
  CHECK(std::abs(m.mass(0) - 0.85625) < 1e-12);
  CHECK_THROWS_AS(mixture({0.5, 0.4}, {product_measure({0.1}), product_measure({0.2})}), InvalidArgument);
  CHECK_THROWS_AS(mixture({0.5, 0.5}, {product_measure({0.1}), product_measure({0.2, 0.3})}), InvalidArgument);
  CHECK_THROWS_AS(Measure::dense(1, {0.5, 0.6}), InvalidArgument);
  CHECK_THROWS_AS(Measure::dense(1, {-0.1, 1.1}), InvalidArgument);
}

TEST_CASE("prob and conditional") {
  const Measure half = product_measure({0.5, 0.5});
  CHECK(prob(half, Event::coordinate(2, 0, true)) == doctest::Approx(0.5));
  CHECK(prob(half, Event::full(2)) == doctest::Approx(1.0));
  const Measure p2 = product_measure({0.2, 0.2, 0.2});
  const Event all_zero = Event::from_predicate(3, [](Config x) { return x == 0; });
  CHECK(std::abs(prob(p2, all_zero) - 0.512) < 1e-12);
  CHECK(conditional(half, Event::coordinate(2, 1, true), Event::coordinate(2, 0, true)) ==
        doctest::Approx(0.5));
  CHECK_THROWS_AS(conditional(half, Event::full(2), Event::empty(2)), UndefinedConditional);
  CHECK_THROWS_AS(prob(half, Event::full(3)), InvalidArgument);
}

TEST_CASE("dense and closed-form products agree") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const Measure m = random_product_measure(n, 0.0, 1.0, rng);
    const auto q = m.product_params();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(prob(m, Event::coordinate(n, i, true)) - q[i]) < 1e-12);
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double c = conditional(m, Event::coordinate(n, i, true), Event::coordinate(n, j, false));
        if (q[j] < 1.0) CHECK(std::abs(c - q[i]) < 1e-12);
      }
    }
  }
}

TEST_CASE("failure-free probability") {
  CHECK(failure_free_prob(product_measure({0.1, 0.1, 0.1})) == doctest::Approx(0.729).epsilon(1e-12));
  CHECK(failure_free_prob(product_measure({0.0, 0.0})) == 1.0);
  CHECK(failure_free_prob(product_measure({1.0, 1.0})) == 0.0);
}

TEST_CASE("complement") {
  const Measure p = product_measure({0.1, 0.3});
  CHECK(tv_distance(complement_measure(p), product_measure({0.9, 0.7})) < 1e-15);
  Rng rng(1);
  const Measure d = random_dense_measure(4, rng);
  CHECK(tv_distance(complement_measure(complement_measure(d)), d) == 0.0);
  const Measure pm = Measure::dense(2, {0.0, 0.0, 1.0, 0.0});  // "01"
  CHECK(complement_measure(pm).mass(parse_config("10")) == 1.0);
}

TEST_CASE("total variation") {
  const Measure a = product_measure({0.4});
  CHECK(tv_distance(a, a) == 0.0);
  CHECK(tv_distance(Measure::point_mass(1, 0), Measure::point_mass(1, 1)) == 1.0);
  CHECK(tv_distance(product_measure({0.0}), product_measure({0.5})) == doctest::Approx(0.5));
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const Measure x = random_dense_measure(3, rng);
    const Measure y = random_dense_measure(3, rng);
    const Measure z = random_dense_measure(3, rng);
    CHECK(tv_distance(x, y) == tv_distance(y, x));
    CHECK(tv_distance(x, z) <= tv_distance(x, y) + tv_distance(y, z) + 1e-12);
  }
}

TEST_CASE("admissibility examples") {
  const Closure c = path3();
  CHECK(is_epsilon_admissible(product_measure({0.1, 0.1, 0.1}), c, 0.1));
  CHECK_FALSE(is_epsilon_admissible(product_measure({0.2, 0.2, 0.2}), c, 0.1));
  const Measure m = mixture({0.5, 0.5}, {product_measure({0.05, 0.05, 0.05}), product_measure({0.1, 0.1, 0.1})});
  CHECK(is_epsilon_admissible(m, c, 0.1));
  CHECK(oracle_admissible(m, c, 0.1));
  CHECK_THROWS_AS(is_epsilon_admissible(product_measure(std::vector<double>(13, 0.1)),
                                        transitive_closure(Dag(13)), 0.1),
                  SizeLimitExceeded);
}

TEST_CASE("W membership examples") {
  const Dag g = Dag::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(is_in_w(product_measure({0.9, 0.9, 0.9}), g, 0.9));
  CHECK_FALSE(is_in_w(product_measure({0.5, 0.5, 0.5}), g, 0.9));
}

TEST_CASE("admissibility checker agrees with explicit enumeration") {
  Rng rng(11);
  int accepted = 0;
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + rng() % 5;
    const Dag g = random_barak_erdos(n, 0.4, rng);
    const Closure c = transitive_closure(g);
    const double eps = 0.2;
    // Dense measures rarely pass; tilted mixtures straddle the boundary.
    const Measure m = t % 2 == 0 ? random_product_mixture(n, 0.0, 0.25, rng) : random_dense_measure(n, rng);
    const bool fast = is_epsilon_admissible(m, c, eps);
    CHECK(fast == oracle_admissible(m, c, eps));
    accepted += fast;
    const double eta = 0.8;
    const Measure w = complement_measure(m);
    CHECK(is_in_w(w, g, eta) == oracle_in_w(w, g, eta));
  }
  CHECK(accepted > 0);
}

TEST_CASE("zero-probability conditions are skipped") {
  // Coordinate 2 is always 0, so conditioning on ω(2) = 1 is vacuous.
  const Measure m = product_measure({0.1, 0.0});
  CHECK(is_epsilon_admissible(m, transitive_closure(Dag(2)), 0.1));
  const ConditionalRange r = scan_conditionals(m, 0, 0b10);
  CHECK(r.positive_cases == 2);
  CHECK(r.max == doctest::Approx(0.1));
}

TEST_CASE("admissible measures satisfy the failure-free bound and duality") {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const Dag g = random_barak_erdos(n, 0.5, rng);
    const Closure c = transitive_closure(g);
    const double eps = std::uniform_real_distribution<double>(0.01, 0.4)(rng);
    const Measure m = random_product_mixture(n, 0.0, eps, rng);
    REQUIRE(is_epsilon_admissible(m, c, eps));
    CHECK(failure_free_prob(m) >= std::pow(1.0 - eps, static_cast<double>(n)) - 1e-12);
    // Duality in both directions, also on a measure that fails.
    CHECK(is_in_w(complement_measure(m), c, 1.0 - eps));
    const Measure bad = random_dense_measure(n, rng);
    CHECK(is_epsilon_admissible(bad, c, eps) == is_in_w(complement_measure(bad), c, 1.0 - eps));
  }
}

TEST_CASE("sample_admissible") {
  const Closure c = path3();
  const Measure zero = sample_admissible(c, 0.0, 1);
  CHECK(zero.mass(0) == doctest::Approx(1.0));
  for (auto strategy : {AdmissibleStrategy::mixture, AdmissibleStrategy::perturb_verify}) {
    const Measure m = sample_admissible(c, 0.1, 42, strategy);
    CHECK(is_epsilon_admissible(m, c, 0.1));
    CHECK(tv_distance(m, sample_admissible(c, 0.1, 42, strategy)) == 0.0);
  }
  CHECK(parse_admissible_strategy("perturb-verify") == AdmissibleStrategy::perturb_verify);
  CHECK_THROWS_AS(parse_admissible_strategy("nope"), InvalidArgument);
}

TEST_CASE("measure text formats round trip") {
  Rng rng(2);
  const std::vector<Measure> ms = {random_dense_measure(3, rng), random_product_measure(4, 0, 1, rng),
                                   random_product_mixture(3, 0, 1, rng)};
  for (const Measure& m : ms) {
    std::stringstream s;
    write_measure(s, m);
    const Measure back = read_measure(s);
    CHECK(back.form() == m.form());
    CHECK(tv_distance(back, m) < 1e-15);
  }
  std::istringstream sparse("2\n11 1\n");
  CHECK(read_measure(sparse).mass(0b11) == 1.0);
}
