#pragma once
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "synbench/matrix.hpp"

namespace synbench {

/// Largest-remainder apportionment: splits `total` into integer parts
/// proportional to `weights`. Floors first, then hands the leftover units to
/// the largest fractional remainders; ties go to the lower index. The result
/// sums to `total` exactly.
inline std::vector<idx_t> largest_remainder_apportion(const std::vector<double>& weights,
                                                      idx_t total) {
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(wsum > 0.0)) throw std::invalid_argument("apportionment weights must sum > 0");
  const std::size_t n = weights.size();
  std::vector<idx_t> parts(n);
  std::vector<std::pair<double, std::size_t>> rem(n);
  idx_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double quota = weights[i] / wsum * static_cast<double>(total);
    parts[i] = static_cast<idx_t>(std::floor(quota));
    assigned += parts[i];
    rem[i] = {quota - std::floor(quota), i};
  }
  std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (idx_t left = total - assigned; left > 0; --left)
    ++parts[rem[static_cast<std::size_t>(total - assigned - left)].second];
  return parts;
}

}  // namespace synbench
