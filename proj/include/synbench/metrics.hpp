#pragma once
#include <span>

#include "synbench/matrix.hpp"

namespace synbench {

/// Unweighted mean of per-class F1. A class with no true members and no
/// predictions contributes 0 (conservative zero-division rule; this matters
/// on small test sets).
double f1_macro(std::span<const idx_t> predicted, std::span<const idx_t> truth, idx_t k);

double accuracy(std::span<const idx_t> predicted, std::span<const idx_t> truth);

}  // namespace synbench
