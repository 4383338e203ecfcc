#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace l1quad {

// Balanced-tree (pairwise) sum. The split point depends only on the length, so
// the result is a pure function of the input sequence.
inline double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 8;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum(std::span<const double>(values.data(), values.size()));
}

}  // namespace l1quad
