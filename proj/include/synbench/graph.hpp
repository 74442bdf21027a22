#pragma once
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "synbench/matrix.hpp"

namespace synbench {

/// Undirected simple graph in CSR form. Both directions of every edge are
/// materialized so neighbor scans are O(degree); the canonical on-disk form
/// stores each edge once as u < v.
struct SparseGraph {
  idx_t node_count = 0;
  std::vector<idx_t> row_offsets;      // length node_count + 1
  std::vector<idx_t> column_indices;   // length 2 * edge_count
  idx_t edge_count = 0;

  /// Builds from an arbitrary edge list: symmetrizes, drops self-loops,
  /// deduplicates, sorts rows. Returns the number of dropped self-loops via
  /// the optional out-parameter.
  static SparseGraph from_edges(idx_t node_count,
                                std::vector<std::pair<idx_t, idx_t>> edges,
                                idx_t* dropped_self_loops = nullptr);

  idx_t degree(idx_t v) const { return row_offsets[v + 1] - row_offsets[v]; }

  std::span<const idx_t> neighbors(idx_t v) const {
    return {column_indices.data() + row_offsets[v],
            static_cast<std::size_t>(degree(v))};
  }

  /// Canonical u < v edge list in sorted order.
  std::vector<std::pair<idx_t, idx_t>> edges() const;

  /// Throws std::invalid_argument when a structural invariant is violated
  /// (asymmetry, self-loop, duplicate edge, bad offsets).
  void validate() const;

  bool operator==(const SparseGraph&) const = default;
};

enum class AttrMode { binary, continuous };

/// Node-attribute matrix, stored sparse (zero entries omitted).
struct AttributeMatrix {
  idx_t node_count = 0;
  idx_t attr_count = 0;
  AttrMode mode = AttrMode::binary;
  CsrMatrix values;  // node_count x attr_count

  static AttributeMatrix from_triplets(
      idx_t node_count, idx_t attr_count, AttrMode mode,
      std::vector<std::tuple<idx_t, idx_t, double>> triplets);

  void validate() const;

  bool operator==(const AttributeMatrix&) const = default;
};

/// Per-node class ids in [0, class_count); every class non-empty.
struct LabelVector {
  std::vector<idx_t> labels;
  idx_t class_count = 0;

  idx_t node_count() const { return static_cast<idx_t>(labels.size()); }
  std::vector<idx_t> class_counts() const;
  void validate() const;

  bool operator==(const LabelVector&) const = default;
};

struct Dataset {
  SparseGraph graph;
  AttributeMatrix attributes;
  LabelVector labels;
  std::string provenance_json = "\"external\"";

  void validate() const;

  bool operator==(const Dataset&) const = default;
};

/// Symmetric GCN normalization with self-loops: entries
/// (i,j) = 1/sqrt((deg_i+1)(deg_j+1)) for every edge and every diagonal.
/// Isolated nodes get a diagonal entry of 1.
CsrMatrix normalized_adjacency(const SparseGraph& graph);

}  // namespace synbench
