#include "synbench/split.hpp"

#include <algorithm>
#include <stdexcept>

#include "synbench/apportion.hpp"
#include "synbench/rng.hpp"

namespace synbench {

namespace {

constexpr std::uint64_t kStreamSplit = 0x53504c49;

void check_ratios(const std::array<double, 3>& ratios) {
  double sum = 0.0;
  for (double r : ratios) {
    if (!(r > 0.0)) throw std::invalid_argument("split ratios must be positive");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("split ratios must sum to 1");
}

void partition_into(std::vector<idx_t>& pool, const std::array<double, 3>& ratios,
                    Split& out) {
  auto counts = largest_remainder_apportion({ratios[0], ratios[1], ratios[2]},
                                            static_cast<idx_t>(pool.size()));
  std::size_t at = 0;
  out.train.insert(out.train.end(), pool.begin(), pool.begin() + counts[0]);
  at += static_cast<std::size_t>(counts[0]);
  out.validation.insert(out.validation.end(), pool.begin() + at,
                        pool.begin() + at + counts[1]);
  at += static_cast<std::size_t>(counts[1]);
  out.test.insert(out.test.end(), pool.begin() + at, pool.end());
}

}  // namespace

void Split::validate(idx_t node_count) const {
  std::vector<int> seen(static_cast<std::size_t>(node_count), 0);
  auto mark = [&](const std::vector<idx_t>& part) {
    for (idx_t v : part) {
      if (v < 0 || v >= node_count)
        throw std::invalid_argument("split index out of range");
      if (seen[v]++) throw std::invalid_argument("split parts overlap");
    }
  };
  mark(train);
  mark(validation);
  mark(test);
  for (idx_t v = 0; v < node_count; ++v)
    if (!seen[v]) throw std::invalid_argument("split does not cover node " + std::to_string(v));
}

Split stratified_split(const LabelVector& labels, const std::array<double, 3>& ratios,
                       std::uint64_t seed) {
  check_ratios(ratios);
  const idx_t k = labels.class_count;
  auto counts = labels.class_counts();
  for (idx_t c = 0; c < k; ++c)
    if (counts[c] < 3)
      throw std::invalid_argument("class " + std::to_string(c) + " has " +
                                  std::to_string(counts[c]) +
                                  " nodes; stratified split needs >= 3 per class");
  std::vector<std::vector<idx_t>> per_class(static_cast<std::size_t>(k));
  for (idx_t c = 0; c < k; ++c) per_class[c].reserve(counts[c]);
  for (idx_t i = 0; i < labels.node_count(); ++i)
    per_class[labels.labels[i]].push_back(i);

  Split split;
  Rng rng(seed, kStreamSplit);
  for (idx_t c = 0; c < k; ++c) {
    rng.shuffle(per_class[c]);
    partition_into(per_class[c], ratios, split);
  }
  split.validate(labels.node_count());
  return split;
}

Split uniform_split(idx_t node_count, const std::array<double, 3>& ratios,
                    std::uint64_t seed) {
  check_ratios(ratios);
  std::vector<idx_t> pool(static_cast<std::size_t>(node_count));
  for (idx_t i = 0; i < node_count; ++i) pool[i] = i;
  Rng rng(seed, kStreamSplit);
  rng.shuffle(pool);
  Split split;
  partition_into(pool, ratios, split);
  split.validate(node_count);
  return split;
}

}  // namespace synbench
