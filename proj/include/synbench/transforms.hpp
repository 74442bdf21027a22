#pragma once
#include <string>
#include <vector>

#include "synbench/matrix.hpp"

namespace synbench {

/// Geometric-style imbalanced class fractions: the first class takes alpha,
/// every following class takes alpha of the remaining mass, the last class
/// the residual. Output sums to 1 exactly.
std::vector<double> configure_class_sizes(double alpha, idx_t y);

std::vector<double> balanced_class_sizes(idx_t y);

/// Homophily/heterophily control: diagonal entries lose 0.1*beta (clamped at
/// zero), off-diagonals gain 0.1*beta/(k-1), then each row is renormalized to
/// sum 1 (clamping can push the literal row sum above 1, and the generator
/// consumes rows as sampling distributions).
DenseMatrix configure_preference_mean(const DenseMatrix& m, double beta);

/// Blend toward the global mean c of H: (H + gamma*c) / (1 + gamma).
/// Preserves the global mean exactly.
DenseMatrix mix_attr_correlation(const DenseMatrix& h, double gamma);

/// Constant matrix filled with mean(H).
DenseMatrix uniform_attr_correlation(const DenseMatrix& h);

enum class AxisKind { class_size, preference, attribute, graph_size, edge_density };

/// One point on a sweep axis: a number (alpha, beta, gamma or edge count),
/// an (n, m) pair, or one of the special settings "balanced" / "uniform".
struct AxisPoint {
  enum class Tag { number, pair, balanced, uniform };
  Tag tag = Tag::number;
  double value = 0.0;
  idx_t n = 0, m = 0;

  static AxisPoint number(double v) { return {Tag::number, v, 0, 0}; }
  static AxisPoint pair(idx_t n, idx_t m) { return {Tag::pair, 0.0, n, m}; }
  static AxisPoint balanced() { return {Tag::balanced, 0.0, 0, 0}; }
  static AxisPoint uniform() { return {Tag::uniform, 0.0, 0, 0}; }

  std::string str() const;
  bool operator==(const AxisPoint&) const = default;
};

struct SweepAxis {
  AxisKind kind = AxisKind::preference;
  std::vector<AxisPoint> values;

  void validate() const;
};

const char* axis_kind_name(AxisKind kind);
AxisKind axis_kind_from_name(const std::string& name);

// Default axis grids.
SweepAxis default_class_size_axis();   // balanced, 0.5, 0.7
SweepAxis default_preference_axis();   // beta 0, 2, 4, 6, 8
SweepAxis default_attribute_axis();    // gamma 16, 4, 1, 0 plus uniform
SweepAxis default_graph_size_axis();   // (3000,5000) ... (12000,20000)
SweepAxis default_edge_density_axis(); // m 5000, 10000, 15000, 20000

}  // namespace synbench
