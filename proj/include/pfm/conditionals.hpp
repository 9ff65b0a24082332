#pragma once

#include <cstddef>

#include "pfm/measure.hpp"

namespace pfm {

// Extremes of P(ω(target) = 1 | C) over a family of conditioning events C,
// skipping every C of probability zero.
struct ConditionalRange {
  double min = 1.0;
  double max = 0.0;
  std::size_t positive_cases = 0;  // conditioning events with P(C) > 0

  bool empty() const { return positive_cases == 0; }
};

// C ranges over every partial assignment on coordinates in `allowed`: each
// allowed coordinate is fixed to 1, fixed to 0, or left free (3^|allowed|
// events, the empty assignment included). `allowed` must not contain target.
//
// Cost is O(2^n + |allowed| · 3^|allowed|).
ConditionalRange scan_conditionals(const Measure& m, std::size_t target, Config allowed);

// C ranges over {ω(j) = 0 for all j ∈ Y} for every Y ⊆ allowed.
ConditionalRange scan_conditionals_given_zeros(const Measure& m, std::size_t target,
                                               Config allowed);

}  // namespace pfm
