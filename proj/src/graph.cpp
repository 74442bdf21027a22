#include "synbench/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace synbench {

SparseGraph SparseGraph::from_edges(idx_t node_count,
                                    std::vector<std::pair<idx_t, idx_t>> edges,
                                    idx_t* dropped_self_loops) {
  idx_t dropped = 0;
  std::vector<std::pair<idx_t, idx_t>> canon;
  canon.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= node_count || v >= node_count)
      throw std::invalid_argument("edge endpoint out of range: (" +
                                  std::to_string(u) + ", " + std::to_string(v) + ")");
    if (u == v) {
      ++dropped;
      continue;
    }
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  if (dropped_self_loops) *dropped_self_loops = dropped;

  SparseGraph g;
  g.node_count = node_count;
  g.edge_count = static_cast<idx_t>(canon.size());
  std::vector<idx_t> deg(static_cast<std::size_t>(node_count), 0);
  for (auto [u, v] : canon) {
    ++deg[u];
    ++deg[v];
  }
  g.row_offsets.assign(static_cast<std::size_t>(node_count) + 1, 0);
  for (idx_t i = 0; i < node_count; ++i) g.row_offsets[i + 1] = g.row_offsets[i] + deg[i];
  g.column_indices.resize(static_cast<std::size_t>(2 * g.edge_count));
  std::vector<idx_t> cursor(g.row_offsets.begin(), g.row_offsets.end() - 1);
  for (auto [u, v] : canon) {
    g.column_indices[cursor[u]++] = v;
    g.column_indices[cursor[v]++] = u;
  }
  for (idx_t i = 0; i < node_count; ++i)
    std::sort(g.column_indices.begin() + g.row_offsets[i],
              g.column_indices.begin() + g.row_offsets[i + 1]);
  return g;
}

std::vector<std::pair<idx_t, idx_t>> SparseGraph::edges() const {
  std::vector<std::pair<idx_t, idx_t>> out;
  out.reserve(static_cast<std::size_t>(edge_count));
  for (idx_t u = 0; u < node_count; ++u)
    for (idx_t v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

void SparseGraph::validate() const {
  if (node_count < 0) throw std::invalid_argument("negative node count");
  if (static_cast<idx_t>(row_offsets.size()) != node_count + 1)
    throw std::invalid_argument("row_offsets length mismatch");
  if (row_offsets.front() != 0 || row_offsets.back() != 2 * edge_count)
    throw std::invalid_argument("row_offsets must span [0, 2*edge_count]");
  for (idx_t i = 0; i < node_count; ++i) {
    if (row_offsets[i + 1] < row_offsets[i])
      throw std::invalid_argument("row_offsets not non-decreasing");
    for (idx_t e = row_offsets[i]; e < row_offsets[i + 1]; ++e) {
      idx_t j = column_indices[e];
      if (j < 0 || j >= node_count)
        throw std::invalid_argument("neighbor index out of range");
      if (j == i) throw std::invalid_argument("self-loop at node " + std::to_string(i));
      if (e > row_offsets[i] && column_indices[e - 1] >= j)
        throw std::invalid_argument("row not strictly increasing (duplicate edge?)");
      // symmetry: i must appear in row j
      auto nb = neighbors(j);
      if (!std::binary_search(nb.begin(), nb.end(), i))
        throw std::invalid_argument("asymmetric adjacency at (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
    }
  }
}

AttributeMatrix AttributeMatrix::from_triplets(
    idx_t node_count, idx_t attr_count, AttrMode mode,
    std::vector<std::tuple<idx_t, idx_t, double>> triplets) {
  for (auto& [node, attr, value] : triplets) {
    if (node < 0 || node >= node_count)
      throw std::invalid_argument("attribute node id out of range: " + std::to_string(node));
    if (attr < 0 || attr >= attr_count)
      throw std::invalid_argument("attribute index out of range: " + std::to_string(attr));
    if (mode == AttrMode::binary && value != 0.0 && value != 1.0)
      throw std::invalid_argument("binary attribute value must be 0 or 1");
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const auto& a, const auto& b) {
              return std::tie(std::get<0>(a), std::get<1>(a)) <
                     std::tie(std::get<0>(b), std::get<1>(b));
            });
  for (std::size_t i = 1; i < triplets.size(); ++i)
    if (std::get<0>(triplets[i]) == std::get<0>(triplets[i - 1]) &&
        std::get<1>(triplets[i]) == std::get<1>(triplets[i - 1]))
      throw std::invalid_argument("duplicate attribute entry");

  AttributeMatrix am;
  am.node_count = node_count;
  am.attr_count = attr_count;
  am.mode = mode;
  am.values.rows = node_count;
  am.values.cols = attr_count;
  am.values.offsets.assign(static_cast<std::size_t>(node_count) + 1, 0);
  for (const auto& t : triplets)
    if (std::get<2>(t) != 0.0) ++am.values.offsets[std::get<0>(t) + 1];
  for (idx_t i = 0; i < node_count; ++i) am.values.offsets[i + 1] += am.values.offsets[i];
  am.values.col_indices.reserve(triplets.size());
  am.values.values.reserve(triplets.size());
  for (const auto& [node, attr, value] : triplets) {
    if (value == 0.0) continue;  // zero entries omitted by convention
    am.values.col_indices.push_back(attr);
    am.values.values.push_back(value);
  }
  return am;
}

void AttributeMatrix::validate() const {
  if (values.rows != node_count || values.cols != attr_count)
    throw std::invalid_argument("attribute matrix dimension mismatch");
  if (static_cast<idx_t>(values.offsets.size()) != node_count + 1)
    throw std::invalid_argument("attribute offsets length mismatch");
  for (idx_t i = 0; i < node_count; ++i) {
    for (idx_t e = values.offsets[i]; e < values.offsets[i + 1]; ++e) {
      if (values.col_indices[e] < 0 || values.col_indices[e] >= attr_count)
        throw std::invalid_argument("attribute index out of range");
      if (e > values.offsets[i] && values.col_indices[e - 1] >= values.col_indices[e])
        throw std::invalid_argument("attribute columns not strictly increasing");
      if (mode == AttrMode::binary && values.values[e] != 1.0)
        throw std::invalid_argument("binary attribute value must be 0 or 1");
    }
  }
}

std::vector<idx_t> LabelVector::class_counts() const {
  std::vector<idx_t> counts(static_cast<std::size_t>(class_count), 0);
  for (idx_t l : labels) {
    if (l < 0 || l >= class_count)
      throw std::invalid_argument("label out of range: " + std::to_string(l));
    ++counts[l];
  }
  return counts;
}

void LabelVector::validate() const {
  if (class_count <= 0) throw std::invalid_argument("class_count must be positive");
  auto counts = class_counts();
  for (idx_t c = 0; c < class_count; ++c)
    if (counts[c] == 0)
      throw std::invalid_argument("empty class " + std::to_string(c));
}

void Dataset::validate() const {
  graph.validate();
  attributes.validate();
  labels.validate();
  if (attributes.node_count != graph.node_count ||
      labels.node_count() != graph.node_count)
    throw std::invalid_argument("node counts disagree across dataset members");
}

CsrMatrix normalized_adjacency(const SparseGraph& graph) {
  const idx_t n = graph.node_count;
  CsrMatrix a;
  a.rows = n;
  a.cols = n;
  a.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (idx_t i = 0; i < n; ++i)
    a.offsets[i + 1] = a.offsets[i] + graph.degree(i) + 1;  // +1 for the diagonal
  a.col_indices.resize(static_cast<std::size_t>(a.offsets[n]));
  a.values.resize(static_cast<std::size_t>(a.offsets[n]));
  for (idx_t i = 0; i < n; ++i) {
    const double di = static_cast<double>(graph.degree(i) + 1);
    idx_t e = a.offsets[i];
    bool diag_done = false;
    for (idx_t j : graph.neighbors(i)) {
      if (!diag_done && j > i) {
        a.col_indices[e] = i;
        a.values[e] = 1.0 / di;
        ++e;
        diag_done = true;
      }
      const double dj = static_cast<double>(graph.degree(j) + 1);
      a.col_indices[e] = j;
      a.values[e] = 1.0 / std::sqrt(di * dj);
      ++e;
    }
    if (!diag_done) {
      a.col_indices[e] = i;
      a.values[e] = 1.0 / di;
    }
  }
  return a;
}

}  // namespace synbench
