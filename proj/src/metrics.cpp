#include "synbench/metrics.hpp"

#include <stdexcept>
#include <vector>

namespace synbench {

double f1_macro(std::span<const idx_t> predicted, std::span<const idx_t> truth, idx_t k) {
  if (predicted.size() != truth.size())
    throw std::invalid_argument("prediction/truth length mismatch");
  std::vector<idx_t> tp(static_cast<std::size_t>(k), 0);
  std::vector<idx_t> fp(static_cast<std::size_t>(k), 0);
  std::vector<idx_t> fn(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const idx_t p = predicted[i], t = truth[i];
    if (p < 0 || p >= k || t < 0 || t >= k)
      throw std::invalid_argument("label out of range");
    if (p == t) {
      ++tp[p];
    } else {
      ++fp[p];
      ++fn[t];
    }
  }
  double sum = 0.0;
  for (idx_t c = 0; c < k; ++c) {
    const double precision =
        tp[c] + fp[c] > 0 ? static_cast<double>(tp[c]) / static_cast<double>(tp[c] + fp[c])
                          : 0.0;
    const double recall =
        tp[c] + fn[c] > 0 ? static_cast<double>(tp[c]) / static_cast<double>(tp[c] + fn[c])
                          : 0.0;
    const double f1 =
        precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    sum += f1;
  }
  return sum / static_cast<double>(k);
}

double accuracy(std::span<const idx_t> predicted, std::span<const idx_t> truth) {
  if (predicted.size() != truth.size())
    throw std::invalid_argument("prediction/truth length mismatch");
  if (truth.empty()) return 0.0;
  idx_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (predicted[i] == truth[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace synbench
