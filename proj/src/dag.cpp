#include "pfm/dag.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include <fmt/core.h>

#include "pfm/errors.hpp"
#include "pfm/rng.hpp"

namespace pfm {

namespace {

// Kahn's algorithm with a min-heap of ready vertices. Returns fewer than n
// vertices iff the graph has a cycle.
std::vector<Vertex> kahn_order(std::size_t n, std::span<const std::size_t> offsets,
                               std::span<const Vertex> targets) {
  std::vector<std::size_t> indegree(n, 0);
  for (Vertex t : targets) ++indegree[t];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(static_cast<Vertex>(v));
  }
  std::vector<Vertex> order;
  order.reserve(n);
  while (!ready.empty()) {
    const Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t k = offsets[v]; k < offsets[v + 1]; ++k) {
      if (--indegree[targets[k]] == 0) ready.push(targets[k]);
    }
  }
  return order;
}

}  // namespace

Dag::Dag(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

Dag Dag::from_edges(std::size_t n, std::vector<Edge> edges) {
  if (n > std::numeric_limits<Vertex>::max()) {
    throw InvalidGraph(fmt::format("vertex count {} too large", n));
  }
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n) {
      throw InvalidGraph(fmt::format("edge ({}, {}) out of range for n = {}", e.from + 1,
                                     e.to + 1, n));
    }
    if (e.from == e.to) {
      throw InvalidGraph(fmt::format("self-loop at vertex {}", e.from + 1));
    }
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw InvalidGraph(fmt::format("duplicate edge ({}, {})", dup->from + 1, dup->to + 1));
  }

  Dag g(n);
  g.edges_ = std::move(edges);
  g.targets_.reserve(g.edges_.size());
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.from + 1];
    g.targets_.push_back(e.to);
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

  if (kahn_order(n, g.offsets_, g.targets_).size() != n) {
    throw InvalidGraph("graph contains a directed cycle");
  }
  return g;
}

std::span<const Vertex> Dag::successors(Vertex v) const {
  return std::span<const Vertex>(targets_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::size_t Dag::max_out_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < n_; ++v) best = std::max(best, offsets_[v + 1] - offsets_[v]);
  return best;
}

bool Dag::has_edge(Vertex from, Vertex to) const {
  auto succ = successors(from);
  return std::binary_search(succ.begin(), succ.end(), to);
}

Dag sample_barak_erdos(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample_barak_erdos: n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(fmt::format("sample_barak_erdos: p = {} outside [0, 1]", p));
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  if (p == 0.0 || n == 1) return Dag::from_edges(n, {});

  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  edges.reserve(static_cast<std::size_t>(std::min(pairs, pairs * p * 1.1 + 16.0)));

  if (p < 0.1) {
    // Walk the row-major sequence of pairs (i, j), i < j, jumping over the
    // geometrically distributed runs of non-edges.
    const double log_miss = std::log1p(-p);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uint64_t i = 0;
    std::uint64_t j = 0;  // last visited column in row i
    double remaining = pairs;
    while (i + 1 < n) {
      const double u = 1.0 - unit(rng);  // (0, 1]
      const double gap = std::floor(std::log(u) / log_miss);
      if (gap >= remaining) break;
      remaining -= gap + 1.0;
      j += static_cast<std::uint64_t>(gap) + 1;
      while (i + 1 < n && j >= n) {
        const std::uint64_t overflow = j - n;
        ++i;
        j = i + 1 + overflow;
      }
      if (i + 1 < n) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    }
  } else {
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (coin(rng)) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
      }
    }
  }
  return Dag::from_edges(n, std::move(edges));
}

std::vector<Vertex> linear_extension(const Dag& g) {
  std::vector<std::size_t> offsets(g.num_vertices() + 1, 0);
  std::vector<Vertex> targets;
  targets.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    ++offsets[e.from + 1];
    targets.push_back(e.to);
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v) offsets[v + 1] += offsets[v];
  return kahn_order(g.num_vertices(), offsets, targets);
}

double density(const Dag& g) {
  if (g.num_vertices() == 0) return 0.0;
  return static_cast<double>(g.num_edges()) / static_cast<double>(g.num_vertices());
}

std::vector<std::uint32_t> closed_out_masks(const Dag& g) {
  if (g.num_vertices() > 32) {
    throw SizeLimitExceeded("closed_out_masks: at most 32 vertices");
  }
  std::vector<std::uint32_t> masks(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    masks[v] = 1u << v;
    for (Vertex w : g.successors(static_cast<Vertex>(v))) masks[v] |= 1u << w;
  }
  return masks;
}

Dag read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_line()) throw InvalidArgument("edge list: missing vertex count");
  long long n = 0;
  {
    std::istringstream head(line);
    std::string rest;
    if (!(head >> n) || n <= 0 || (head >> rest)) {
      throw InvalidArgument(fmt::format("edge list line {}: bad vertex count", line_no));
    }
  }
  std::vector<Edge> edges;
  while (next_line()) {
    std::istringstream row(line);
    long long i = 0;
    long long j = 0;
    std::string rest;
    if (!(row >> i >> j) || (row >> rest)) {
      throw InvalidArgument(fmt::format("edge list line {}: expected \"i j\"", line_no));
    }
    if (i < 1 || j < 1 || i > n || j > n) {
      throw InvalidGraph(fmt::format("edge list line {}: label out of range 1..{}", line_no, n));
    }
    edges.push_back({static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1)});
  }
  return Dag::from_edges(static_cast<std::size_t>(n), std::move(edges));
}

void write_edge_list(std::ostream& out, const Dag& g) {
  out << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.from + 1 << ' ' << e.to + 1 << '\n';
}

}  // namespace pfm
