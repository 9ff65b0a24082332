#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pfm/dag.hpp"

namespace pfm {

// Closure requests above this vertex count are rejected (2^16 vertices is
// already 512 MiB of bitsets).
inline constexpr std::size_t kMaxClosureVertices = std::size_t{1} << 16;

// Reflexive transitive closure of a DAG: row v is the bitset Γ*(v), packed
// into 64-bit words. Immutable once built.
class Closure {
 public:
  std::size_t num_vertices() const { return n_; }
  std::size_t words_per_row() const { return words_; }

  std::span<const std::uint64_t> row(Vertex v) const {
    return std::span<const std::uint64_t>(bits_).subspan(v * words_, words_);
  }
  bool reaches(Vertex from, Vertex to) const {
    return (bits_[from * words_ + to / 64] >> (to % 64)) & 1u;
  }

  // |Γ*(v)|.
  std::size_t rtc_size(Vertex v) const { return sizes_[v]; }
  std::span<const std::size_t> rtc_sizes() const { return sizes_; }

  // γ* = max_v |Γ*(v)|, and Δ = γ* − 1 (max out-degree of the closure graph).
  std::size_t gamma_star() const { return gamma_star_; }
  std::size_t delta() const { return gamma_star_ == 0 ? 0 : gamma_star_ - 1; }

  std::size_t storage_bytes() const { return bits_.size() * sizeof(std::uint64_t); }

  // Bitmask of Γ*(v) for every v. Requires n <= 32.
  std::vector<std::uint32_t> masks() const;

  // The closure graph G*: edge (i, j) for every j ∈ Γ(i).
  Dag as_dag() const;

 private:
  friend Closure transitive_closure(const Dag& g);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::size_t> sizes_;
  std::size_t gamma_star_ = 0;
};

// Reverse-topological bitset DP: reach(v) = {v} ∪ ⋃_{w ∈ N(v)} reach(w).
// Throws SizeLimitExceeded when n > kMaxClosureVertices.
Closure transitive_closure(const Dag& g);

// |Γ*(v)| in vertex order.
std::vector<std::size_t> rtc_sizes(const Closure& c);

}  // namespace pfm
