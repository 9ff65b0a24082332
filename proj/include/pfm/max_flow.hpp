#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace pfm {

// Dinic's algorithm on integer capacities. Exact: no floating point involved.
class MaxFlow {
 public:
  using Capacity = std::int64_t;
  static constexpr Capacity kInfinite = std::numeric_limits<Capacity>::max() / 4;

  explicit MaxFlow(std::size_t nodes);

  // Returns an arc id usable with flow().
  std::size_t add_arc(std::size_t from, std::size_t to, Capacity capacity);

  Capacity solve(std::size_t source, std::size_t sink);

  // Flow on an arc after solve().
  Capacity flow(std::size_t arc) const;

 private:
  struct Arc {
    std::size_t to;
    Capacity residual;
    Capacity capacity;
  };

  bool build_levels(std::size_t source, std::size_t sink);
  Capacity push(std::size_t node, std::size_t sink, Capacity limit);

  std::vector<std::vector<std::size_t>> out_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace pfm
