#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace pfm {

// Vertices are 0-based inside the library. Text formats and CLI output use
// 1-based labels (vertex v is printed as v + 1).
using Vertex = std::uint32_t;

struct Edge {
  Vertex from = 0;
  Vertex to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable acyclic digraph. Construction validates labels, self-loops,
// duplicates and acyclicity; a constructed Dag is always a valid DAG.
class Dag {
 public:
  // Throws InvalidGraph on any violated invariant.
  static Dag from_edges(std::size_t n, std::vector<Edge> edges);

  // Empty graph on n vertices.
  explicit Dag(std::size_t n = 0);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  // Sorted lexicographically by (from, to).
  std::span<const Edge> edges() const { return edges_; }

  // Out-neighbours N(v), ascending.
  std::span<const Vertex> successors(Vertex v) const;

  std::size_t out_degree(Vertex v) const { return successors(v).size(); }
  std::size_t max_out_degree() const;

  bool has_edge(Vertex from, Vertex to) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Vertex> targets_;
  std::vector<std::size_t> offsets_;
};

// Barak–Erdős G_d(n, p): every pair i < j becomes the edge (i, j)
// independently with probability p. Deterministic in (n, p, seed).
//
// For p < 0.1 the pair sequence is traversed with geometric jumps, giving
// O(n + e) expected time; otherwise each pair gets its own Bernoulli draw.
Dag sample_barak_erdos(std::size_t n, double p, std::uint64_t seed);

// Topological order; among ready vertices the smallest label goes first.
std::vector<Vertex> linear_extension(const Dag& g);

// e(G) / v(G).
double density(const Dag& g);

// Bitmask of the closed out-neighbourhood {v} ∪ N(v) for every v. Requires
// n <= 32.
std::vector<std::uint32_t> closed_out_masks(const Dag& g);

// Edge-list text format: first line n, then one "i j" pair per line, 1-based.
// Blank lines and lines starting with '#' are ignored on read.
Dag read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Dag& g);

}  // namespace pfm
