#include "pfm/closure.hpp"

#include <algorithm>
#include <bit>

#include <fmt/core.h>

#include "pfm/errors.hpp"

namespace pfm {

Closure transitive_closure(const Dag& g) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxClosureVertices) {
    throw SizeLimitExceeded(
        fmt::format("transitive_closure: n = {} exceeds the cap of {}", n, kMaxClosureVertices));
  }
  Closure c;
  c.n_ = n;
  c.words_ = (n + 63) / 64;
  c.bits_.assign(n * c.words_, 0);
  c.sizes_.assign(n, 0);

  // Lowest nonzero word of each finished row; rows of Barak–Erdős graphs are
  // zero below the diagonal, so unions can start there.
  std::vector<std::size_t> first_word(n, 0);

  const std::vector<Vertex> order = linear_extension(g);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex v = *it;
    std::uint64_t* dst = c.bits_.data() + v * c.words_;
    dst[v / 64] |= std::uint64_t{1} << (v % 64);
    std::size_t lo = v / 64;
    for (Vertex w : g.successors(v)) {
      const std::uint64_t* src = c.bits_.data() + w * c.words_;
      for (std::size_t k = first_word[w]; k < c.words_; ++k) dst[k] |= src[k];
      lo = std::min(lo, first_word[w]);
    }
    first_word[v] = lo;
    std::size_t count = 0;
    for (std::size_t k = lo; k < c.words_; ++k) count += std::popcount(dst[k]);
    c.sizes_[v] = count;
  }
  c.gamma_star_ = n == 0 ? 0 : *std::max_element(c.sizes_.begin(), c.sizes_.end());
  return c;
}

std::vector<std::uint32_t> Closure::masks() const {
  if (n_ > 32) throw SizeLimitExceeded("Closure::masks: at most 32 vertices");
  std::vector<std::uint32_t> out(n_);
  for (std::size_t v = 0; v < n_; ++v) out[v] = static_cast<std::uint32_t>(bits_[v * words_]);
  return out;
}

Dag Closure::as_dag() const {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n_; ++v) {
    for (std::size_t k = 0; k < words_; ++k) {
      std::uint64_t word = bits_[v * words_ + k];
      while (word != 0) {
        const std::size_t w = k * 64 + static_cast<std::size_t>(std::countr_zero(word));
        word &= word - 1;
        if (w != v) edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(w)});
      }
    }
  }
  return Dag::from_edges(n_, std::move(edges));
}

std::vector<std::size_t> rtc_sizes(const Closure& c) {
  return {c.rtc_sizes().begin(), c.rtc_sizes().end()};
}

}  // namespace pfm
