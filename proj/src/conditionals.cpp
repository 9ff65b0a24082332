#include "pfm/conditionals.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "pfm/errors.hpp"

namespace pfm {

namespace {

// Marginal of m on the allowed coordinates, indexed by the compressed
// bitmask (k-th allowed coordinate -> bit k), split by the target bit.
struct Marginal {
  std::vector<double> total;
  std::vector<double> ones;
};

Marginal marginalize(const Measure& m, std::size_t target, Config allowed) {
  if (target >= m.num_coordinates()) throw InvalidArgument("conditional scan: target out of range");
  if ((allowed >> target) & 1u) {
    throw InvalidArgument("conditional scan: target cannot be conditioned on itself");
  }
  if (m.num_coordinates() < 32 && (allowed >> m.num_coordinates()) != 0) {
    throw InvalidArgument("conditional scan: allowed set out of range");
  }
  std::vector<std::size_t> coords;
  for (Config rest = allowed; rest != 0; rest &= rest - 1) {
    coords.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
  }
  const std::size_t k = coords.size();
  Marginal out{std::vector<double>(std::size_t{1} << k, 0.0),
               std::vector<double>(std::size_t{1} << k, 0.0)};
  const auto t = m.table();
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (t[x] == 0.0) continue;
    std::size_t b = 0;
    for (std::size_t c = 0; c < k; ++c) b |= ((x >> coords[c]) & 1u) << c;
    out.total[b] += t[x];
    if ((x >> target) & 1u) out.ones[b] += t[x];
  }
  return out;
}

void record(ConditionalRange& range, double ones, double total) {
  if (total <= 0.0) return;
  const double ratio = std::min(1.0, ones / total);
  range.min = std::min(range.min, ratio);
  range.max = std::max(range.max, ratio);
  ++range.positive_cases;
}

}  // namespace

ConditionalRange scan_conditionals(const Measure& m, std::size_t target, Config allowed) {
  const Marginal marg = marginalize(m, target, allowed);
  const std::size_t k = static_cast<std::size_t>(std::popcount(allowed));

  std::size_t cases = 1;
  std::vector<std::size_t> pow3(k + 1, 1);
  for (std::size_t c = 0; c < k; ++c) pow3[c + 1] = pow3[c] * 3;
  cases = pow3[k];

  // Ternary index: digit 0 -> coordinate fixed to 0, 1 -> fixed to 1,
  // 2 -> free. A free digit is resolved by summing its two fixed variants,
  // both of which have smaller indices and are therefore already filled.
  std::vector<double> total(cases);
  std::vector<double> ones(cases);
  std::vector<std::uint8_t> digits(k, 0);
  ConditionalRange range;
  for (std::size_t t = 0; t < cases; ++t) {
    if (t > 0) {
      for (std::size_t c = 0; c < k; ++c) {
        if (++digits[c] < 3) break;
        digits[c] = 0;
      }
    }
    std::size_t free_pos = k;
    std::size_t bits = 0;
    for (std::size_t c = 0; c < k; ++c) {
      if (digits[c] == 2) {
        free_pos = c;
        break;
      }
      bits |= static_cast<std::size_t>(digits[c]) << c;
    }
    if (free_pos == k) {
      total[t] = marg.total[bits];
      ones[t] = marg.ones[bits];
    } else {
      total[t] = total[t - pow3[free_pos]] + total[t - 2 * pow3[free_pos]];
      ones[t] = ones[t - pow3[free_pos]] + ones[t - 2 * pow3[free_pos]];
    }
    record(range, ones[t], total[t]);
  }
  return range;
}

ConditionalRange scan_conditionals_given_zeros(const Measure& m, std::size_t target,
                                               Config allowed) {
  Marginal marg = marginalize(m, target, allowed);
  const std::size_t k = static_cast<std::size_t>(std::popcount(allowed));
  const std::size_t size = std::size_t{1} << k;

  // Subset sums h(T) = Σ_{b ⊆ T} g(b); the event "zeros on Y" then has mass
  // h(complement of Y).
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t bit = std::size_t{1} << c;
    for (std::size_t b = 0; b < size; ++b) {
      if (b & bit) {
        marg.total[b] += marg.total[b ^ bit];
        marg.ones[b] += marg.ones[b ^ bit];
      }
    }
  }
  ConditionalRange range;
  const std::size_t all = size - 1;
  for (std::size_t y = 0; y < size; ++y) record(range, marg.ones[all ^ y], marg.total[all ^ y]);
  return range;
}

}  // namespace pfm
