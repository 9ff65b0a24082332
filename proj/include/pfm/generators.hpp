#pragma once

#include <cstddef>
#include <vector>

#include "pfm/dag.hpp"
#include "pfm/measure.hpp"
#include "pfm/rng.hpp"

namespace pfm {

// Random instances for the verification suites and tests. Everything draws
// from the supplied engine only.

// Barak–Erdős graph on n vertices with edge probability p, seeded from rng.
Dag random_barak_erdos(std::size_t n, double p, Rng& rng);

// DAG on n > delta vertices whose maximum out-degree is exactly delta. Edges
// point from lower to higher labels; vertex 0 always gets delta successors.
Dag random_bounded_outdegree_dag(std::size_t n, std::size_t delta, Rng& rng);

std::vector<Vertex> random_permutation(std::size_t n, Rng& rng);

// Dense measure with i.i.d. exponential weights, normalized.
Measure random_dense_measure(std::size_t n, Rng& rng);

// Product measure with parameters uniform in [lo, hi].
Measure random_product_measure(std::size_t n, double lo, double hi, Rng& rng);

// Mixture of 1 to 4 product components with parameters uniform in [lo, hi].
Measure random_product_mixture(std::size_t n, double lo, double hi, Rng& rng);

// Moves every configuration's mass to random supersets, so the result
// stochastically dominates m.
Measure random_push_up(const Measure& m, Rng& rng);

// Chain-rule measure along `order`: the k-th vertex is 1 with probability
// drawn uniformly from [eta, 1] independently for each assignment of the
// earlier vertices. Passes holley_check(·, eta, order) by construction.
Measure random_sequential_measure(std::size_t n, double eta, const std::vector<Vertex>& order,
                                  Rng& rng);

}  // namespace pfm
