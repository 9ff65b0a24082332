#include "pfm/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "pfm/errors.hpp"

namespace pfm {

Dag random_barak_erdos(std::size_t n, double p, Rng& rng) {
  return sample_barak_erdos(n, p, rng());
}

Dag random_bounded_outdegree_dag(std::size_t n, std::size_t delta, Rng& rng) {
  if (n <= delta) throw InvalidArgument("random_bounded_outdegree_dag: need n > delta");
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) {
    std::vector<Vertex> later(n - v - 1);
    std::iota(later.begin(), later.end(), static_cast<Vertex>(v + 1));
    std::shuffle(later.begin(), later.end(), rng);
    const std::size_t cap = std::min(delta, later.size());
    std::size_t degree = cap;
    if (v > 0) degree = std::uniform_int_distribution<std::size_t>(0, cap)(rng);
    for (std::size_t k = 0; k < degree; ++k) edges.push_back({static_cast<Vertex>(v), later[k]});
  }
  return Dag::from_edges(n, std::move(edges));
}

std::vector<Vertex> random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

Measure random_dense_measure(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> weight(1.0);
  std::vector<double> table(std::size_t{1} << n);
  double total = 0.0;
  for (double& v : table) total += v = weight(rng);
  for (double& v : table) v /= total;
  return Measure::dense(n, std::move(table));
}

Measure random_product_measure(std::size_t n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> param(lo, hi);
  std::vector<double> params(n);
  for (double& p : params) p = std::clamp(param(rng), lo, hi);
  return Measure::product(std::move(params));
}

Measure random_product_mixture(std::size_t n, double lo, double hi, Rng& rng) {
  const int k = std::uniform_int_distribution<int>(1, 4)(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> weights(k);
  std::vector<Measure> parts;
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    total += weights[c] = 1.0 - unit(rng);
    parts.push_back(random_product_measure(n, lo, hi, rng));
  }
  for (double& w : weights) w /= total;
  return Measure::mixture(std::move(weights), std::move(parts));
}

Measure random_push_up(const Measure& m, Rng& rng) {
  const std::size_t n = m.num_coordinates();
  std::vector<double> table(m.num_configs(), 0.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution flip(0.3);
  for (std::size_t x = 0; x < table.size(); ++x) {
    const double mass = m.mass(static_cast<Config>(x));
    const double share = unit(rng);
    for (double part : {share * mass, (1.0 - share) * mass}) {
      std::size_t y = x;
      for (std::size_t k = 0; k < n; ++k) {
        if (flip(rng)) y |= std::size_t{1} << k;
      }
      table[y] += part;
    }
  }
  double total = 0.0;
  for (double v : table) total += v;
  for (double& v : table) v /= total;
  return Measure::dense(n, std::move(table));
}

Measure random_sequential_measure(std::size_t n, double eta, const std::vector<Vertex>& order,
                                  Rng& rng) {
  if (order.size() != n) throw InvalidArgument("random_sequential_measure: bad order");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // q[k][prefix]: P(vertex order[k] = 1 | earlier vertices spell `prefix`).
  std::vector<std::vector<double>> q(n);
  for (std::size_t k = 0; k < n; ++k) {
    q[k].resize(std::size_t{1} << k);
    for (double& v : q[k]) v = std::min(1.0, eta + (1.0 - eta) * unit(rng));
  }
  std::vector<double> table(std::size_t{1} << n);
  for (std::size_t x = 0; x < table.size(); ++x) {
    double p = 1.0;
    std::size_t prefix = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const bool bit = (x >> order[k]) & 1u;
      p *= bit ? q[k][prefix] : 1.0 - q[k][prefix];
      prefix |= static_cast<std::size_t>(bit) << k;
    }
    table[x] = p;
  }
  double total = 0.0;
  for (double v : table) total += v;
  for (double& v : table) v /= total;
  return Measure::dense(n, std::move(table));
}

}  // namespace pfm
