#include <doctest.h>

#include <cmath>
#include <queue>
#include <sstream>

#include "pfm/closure.hpp"
#include "pfm/dag.hpp"
#include "pfm/errors.hpp"
#include "pfm/rng.hpp"

using namespace pfm;

namespace {

// Reachability by BFS from every vertex.
std::vector<std::vector<bool>> bfs_reach(const Dag& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (Vertex s = 0; s < n; ++s) {
    std::queue<Vertex> q;
    q.push(s);
    reach[s][s] = true;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      for (Vertex w : g.successors(v)) {
        if (!reach[s][w]) {
          reach[s][w] = true;
          q.push(w);
        }
      }
    }
  }
  return reach;
}

Dag diamond() { return Dag::from_edges(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

}  // namespace

TEST_CASE("sampling extremes") {
  const Dag full = sample_barak_erdos(3, 1.0, 99);
  CHECK(std::vector<Edge>(full.edges().begin(), full.edges().end()) ==
        std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(sample_barak_erdos(5, 0.0, 1).num_edges() == 0);
  CHECK_THROWS_AS(sample_barak_erdos(4, 1.5, 1), InvalidArgument);
  CHECK_THROWS_AS(sample_barak_erdos(4, -0.1, 1), InvalidArgument);
  CHECK_THROWS_AS(sample_barak_erdos(0, 0.5, 1), InvalidArgument);
}

TEST_CASE("sampling is deterministic and oriented") {
  for (double p : {0.01, 0.05, 0.5}) {
    const Dag a = sample_barak_erdos(200, p, 17);
    const Dag b = sample_barak_erdos(200, p, 17);
    CHECK(std::vector<Edge>(a.edges().begin(), a.edges().end()) ==
          std::vector<Edge>(b.edges().begin(), b.edges().end()));
    for (const Edge& e : a.edges()) CHECK(e.from < e.to);
  }
}

TEST_CASE("edge count matches p in both sampling branches") {
  // Mean edge count p·n(n−1)/2, checked to 5 standard deviations.
  constexpr std::size_t n = 400;
  const double pairs = n * (n - 1) / 2.0;
  for (double p : {0.003, 0.05, 0.2}) {
    double total = 0.0;
    constexpr int reps = 20;
    for (int s = 0; s < reps; ++s) total += static_cast<double>(sample_barak_erdos(n, p, 1000 + s).num_edges());
    const double mean = total / reps;
    const double sd = std::sqrt(pairs * p * (1 - p) / reps);
    CHECK(std::abs(mean - pairs * p) < 5 * sd);
  }
}

TEST_CASE("construction rejects invalid graphs") {
  CHECK_THROWS_AS(Dag::from_edges(2, {{0, 1}, {1, 0}}), InvalidGraph);
  CHECK_THROWS_AS(Dag::from_edges(2, {{0, 0}}), InvalidGraph);
  CHECK_THROWS_AS(Dag::from_edges(2, {{0, 1}, {0, 1}}), InvalidGraph);
  CHECK_THROWS_AS(Dag::from_edges(2, {{0, 2}}), InvalidGraph);
  CHECK_THROWS_AS(Dag::from_edges(3, {{0, 1}, {1, 2}, {2, 0}}), InvalidGraph);
}

TEST_CASE("closure of small graphs") {
  const Closure path = transitive_closure(Dag::from_edges(3, {{0, 1}, {1, 2}}));
  CHECK(rtc_sizes(path) == std::vector<std::size_t>{3, 2, 1});
  CHECK(path.reaches(0, 2));
  CHECK_FALSE(path.reaches(2, 0));

  const Closure d = transitive_closure(diamond());
  CHECK(rtc_sizes(d) == std::vector<std::size_t>{4, 2, 2, 1});
  CHECK(d.gamma_star() == 4);
  CHECK(d.delta() == 3);

  const Closure empty = transitive_closure(Dag(5));
  CHECK(empty.gamma_star() == 1);
  CHECK(rtc_sizes(transitive_closure(Dag(4))) == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("closure matches BFS and is idempotent") {
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng() % 64;
    const double p = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
    const Dag g = sample_barak_erdos(n, p, rng());
    const Closure c = transitive_closure(g);
    const auto oracle = bfs_reach(g);
    std::size_t gamma = 0;
    for (Vertex i = 0; i < n; ++i) {
      std::size_t size = 0;
      for (Vertex j = 0; j < n; ++j) {
        REQUIRE(c.reaches(i, j) == oracle[i][j]);
        size += oracle[i][j];
      }
      CHECK(c.rtc_size(i) == size);
      gamma = std::max(gamma, size);
    }
    CHECK(c.gamma_star() == gamma);
    // Transitivity of rows.
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = 0; j < n; ++j) {
        if (!c.reaches(i, j)) continue;
        for (Vertex k = 0; k < n; ++k) {
          if (c.reaches(j, k)) REQUIRE(c.reaches(i, k));
        }
      }
    }
    // Closing the closure graph changes nothing.
    const Closure again = transitive_closure(c.as_dag());
    for (Vertex i = 0; i < n; ++i) {
      CHECK(std::equal(again.row(i).begin(), again.row(i).end(), c.row(i).begin()));
    }
    CHECK(c.as_dag().max_out_degree() == c.delta());
  }
}

TEST_CASE("gamma star at p = 0 and p = 1") {
  CHECK(transitive_closure(sample_barak_erdos(50, 1.0, 3)).gamma_star() == 50);
  CHECK(transitive_closure(sample_barak_erdos(50, 0.0, 3)).gamma_star() == 1);
}

TEST_CASE("mean gamma star is monotone in p") {
  // Inversions beyond two standard errors are failures.
  constexpr std::size_t n = 256;
  constexpr int seeds = 50;
  std::vector<double> means;
  std::vector<double> ses;
  for (double p : {0.001, 0.004, 0.01, 0.1}) {
    double s = 0.0;
    double s2 = 0.0;
    for (int k = 0; k < seeds; ++k) {
      const double g = static_cast<double>(transitive_closure(sample_barak_erdos(n, p, derive_seed(77, k))).gamma_star());
      s += g;
      s2 += g * g;
    }
    const double mean = s / seeds;
    means.push_back(mean);
    ses.push_back(std::sqrt(std::max(0.0, s2 / seeds - mean * mean) / seeds));
  }
  for (std::size_t k = 1; k < means.size(); ++k) {
    CHECK(means[k] >= means[k - 1] - 2.0 * std::hypot(ses[k], ses[k - 1]));
  }
}

TEST_CASE("closure size cap") {
  CHECK_THROWS_AS(transitive_closure(Dag(kMaxClosureVertices + 1)), SizeLimitExceeded);
}

TEST_CASE("linear extension") {
  CHECK(linear_extension(Dag::from_edges(2, {{1, 0}})) == std::vector<Vertex>{1, 0});
  CHECK(linear_extension(Dag(3)) == std::vector<Vertex>{0, 1, 2});
  const Dag be = sample_barak_erdos(30, 0.3, 8);
  std::vector<Vertex> identity(30);
  for (Vertex v = 0; v < 30; ++v) identity[v] = v;
  CHECK(linear_extension(be) == identity);

  const Dag g = Dag::from_edges(5, {{4, 0}, {3, 4}, {2, 1}});
  const std::vector<Vertex> order = linear_extension(g);
  std::vector<std::size_t> pos(5);
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  for (const Edge& e : g.edges()) CHECK(pos[e.from] < pos[e.to]);
}

TEST_CASE("density") {
  CHECK(density(sample_barak_erdos(3, 1.0, 0)) == doctest::Approx(1.0));
  CHECK(density(Dag(7)) == 0.0);
  CHECK(density(diamond()) == doctest::Approx(1.0));
}

TEST_CASE("edge list round trip") {
  const Dag g = sample_barak_erdos(20, 0.2, 4);
  std::stringstream s;
  write_edge_list(s, g);
  const Dag back = read_edge_list(s);
  CHECK(back.num_vertices() == 20);
  CHECK(std::vector<Edge>(back.edges().begin(), back.edges().end()) ==
        std::vector<Edge>(g.edges().begin(), g.edges().end()));

  std::istringstream text("# comment\n3\n\n1 2\n2 3\n");
  const Dag parsed = read_edge_list(text);
  CHECK(parsed.has_edge(0, 1));
  CHECK(parsed.has_edge(1, 2));
  std::istringstream bad("2\n1 3\n");
  CHECK_THROWS_AS(read_edge_list(bad), InvalidArgument);
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(9, 4) == derive_seed(9, 4));
}
