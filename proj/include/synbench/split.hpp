#pragma once
#include <array>
#include <cstdint>
#include <vector>

#include "synbench/graph.hpp"

namespace synbench {

struct Split {
  std::vector<idx_t> train;
  std::vector<idx_t> validation;
  std::vector<idx_t> test;

  /// Disjointness + full coverage of [0, n).
  void validate(idx_t node_count) const;
};

/// Per-class shuffle and largest-remainder partition by the given ratios.
/// Every class must have at least 3 nodes.
Split stratified_split(const LabelVector& labels, const std::array<double, 3>& ratios,
                       std::uint64_t seed);

/// Plain shuffle of all nodes, partitioned by the ratios. No per-class
/// minimum, so tiny classes may miss one of the parts entirely.
Split uniform_split(idx_t node_count, const std::array<double, 3>& ratios,
                    std::uint64_t seed);

}  // namespace synbench
