#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>

namespace matchlab {

// Both supports must be sorted and duplicate-free.
template <class Key>
Real total_variation(std::span<const Key> support, std::span<const Real> probs,
                     std::span<const Key> observed, std::span<const std::uint64_t> counts) {
  const Real total = std::accumulate(counts.begin(), counts.end(), Real{0});
  Real tv = 0;
  std::size_t i = 0, j = 0;
  while (i < support.size() || j < observed.size()) {
    if (j == observed.size() || (i < support.size() && support[i] < observed[j])) {
      tv += std::fabs(probs[i++]);
    } else if (i == support.size() || observed[j] < support[i]) {
      tv += counts[j++] / total;
    } else {
      tv += std::fabs(probs[i++] - counts[j++] / total);
    }
  }
  return tv / 2;
}

}  // namespace matchlab
