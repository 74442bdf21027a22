#pragma once
#include <string>
#include <vector>

#include "synbench/graph.hpp"

namespace synbench {

/// Class-level summary of a labeled attributed graph: sizes and fractions of
/// each class, the k x k class preference mean M (row l1 averages, over nodes
/// of class l1, the fraction of their neighbors in each class), and the d x k
/// attribute-class correlation H (mean value of each attribute per class).
struct ClassFeatures {
  std::vector<idx_t> sizes;            // rho, length k
  std::vector<double> size_fractions;  // rho / n
  DenseMatrix preference_mean;         // M, k x k, row-stochastic
  DenseMatrix attr_correlation;        // H, d x k
};

struct GraphFeatures {
  idx_t node_count = 0;
  idx_t edge_count = 0;
  idx_t attr_count = 0;
  idx_t class_count = 0;

  bool operator==(const GraphFeatures&) const = default;
};

struct ClassSizes {
  std::vector<idx_t> sizes;
  std::vector<double> fractions;
};

ClassSizes extract_class_sizes(const LabelVector& labels);

/// Isolated (degree-0) nodes are excluded from the per-class average; a class
/// whose nodes are all isolated is an error.
DenseMatrix extract_preference_mean(const SparseGraph& graph, const LabelVector& labels);

DenseMatrix extract_attr_correlation(const AttributeMatrix& attrs,
                                     const LabelVector& labels);

GraphFeatures extract_graph_features(const Dataset& dataset);

ClassFeatures extract_class_features(const Dataset& dataset);

// features.json (schema_version 1)
std::string features_to_json(const ClassFeatures& cf, const GraphFeatures& gf);
void features_from_json(const std::string& text, ClassFeatures& cf, GraphFeatures& gf);

}  // namespace synbench
