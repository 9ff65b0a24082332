#include "pfm/max_flow.hpp"

#include <algorithm>
#include <queue>

#include "pfm/errors.hpp"

namespace pfm {

MaxFlow::MaxFlow(std::size_t nodes) : out_(nodes), level_(nodes), next_(nodes) {}

std::size_t MaxFlow::add_arc(std::size_t from, std::size_t to, Capacity capacity) {
  if (capacity < 0) throw InvalidArgument("max flow: negative capacity");
  const std::size_t id = arcs_.size();
  arcs_.push_back({to, capacity, capacity});
  arcs_.push_back({from, 0, 0});
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  return id;
}

MaxFlow::Capacity MaxFlow::flow(std::size_t arc) const {
  return arcs_[arc].capacity - arcs_[arc].residual;
}

bool MaxFlow::build_levels(std::size_t source, std::size_t sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<std::size_t> frontier;
  level_[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    for (std::size_t id : out_[v]) {
      const Arc& a = arcs_[id];
      if (a.residual > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        frontier.push(a.to);
      }
    }
  }
  return level_[sink] >= 0;
}

// Blocking-flow DFS; next_ keeps the current-arc pointer per node.
MaxFlow::Capacity MaxFlow::push(std::size_t node, std::size_t sink, Capacity limit) {
  if (node == sink) return limit;
  for (; next_[node] < out_[node].size(); ++next_[node]) {
    const std::size_t id = out_[node][next_[node]];
    Arc& a = arcs_[id];
    if (a.residual <= 0 || level_[a.to] != level_[node] + 1) continue;
    const Capacity pushed = push(a.to, sink, std::min(limit, a.residual));
    if (pushed > 0) {
      a.residual -= pushed;
      arcs_[id ^ 1].residual += pushed;
      return pushed;
    }
  }
  return 0;
}

MaxFlow::Capacity MaxFlow::solve(std::size_t source, std::size_t sink) {
  Capacity total = 0;
  while (build_levels(source, sink)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (Capacity pushed = push(source, sink, kInfinite)) total += pushed;
  }
  return total;
}

}  // namespace pfm
