#include "synbench/features.hpp"

#include <stdexcept>

#include "json.hpp"

namespace synbench {

ClassSizes extract_class_sizes(const LabelVector& labels) {
  labels.validate();  // rejects empty classes
  ClassSizes cs;
  cs.sizes = labels.class_counts();
  const double n = static_cast<double>(labels.node_count());
  cs.fractions.reserve(cs.sizes.size());
  for (idx_t s : cs.sizes) cs.fractions.push_back(static_cast<double>(s) / n);
  return cs;
}

DenseMatrix extract_preference_mean(const SparseGraph& graph, const LabelVector& labels) {
  if (graph.node_count != labels.node_count())
    throw std::invalid_argument("graph/label node counts differ");
  const idx_t k = labels.class_count;
  DenseMatrix m(k, k);
  std::vector<idx_t> counted(static_cast<std::size_t>(k), 0);
  std::vector<double> frac(static_cast<std::size_t>(k));
  for (idx_t i = 0; i < graph.node_count; ++i) {
    const idx_t deg = graph.degree(i);
    if (deg == 0) continue;  // degree-0 nodes have no neighbor distribution
    std::fill(frac.begin(), frac.end(), 0.0);
    for (idx_t j : graph.neighbors(i)) frac[labels.labels[j]] += 1.0;
    const idx_t c = labels.labels[i];
    double* row = m.row(c);
    for (idx_t l = 0; l < k; ++l) row[l] += frac[l] / static_cast<double>(deg);
    ++counted[c];
  }
  for (idx_t c = 0; c < k; ++c) {
    if (counted[c] == 0)
      throw std::invalid_argument("class " + std::to_string(c) +
                                  " has only isolated nodes; preference mean undefined");
    double* row = m.row(c);
    for (idx_t l = 0; l < k; ++l) row[l] /= static_cast<double>(counted[c]);
  }
  return m;
}

DenseMatrix extract_attr_correlation(const AttributeMatrix& attrs,
                                     const LabelVector& labels) {
  if (attrs.node_count != labels.node_count())
    throw std::invalid_argument("attribute/label node counts differ");
  labels.validate();  // rejects empty classes
  const idx_t d = attrs.attr_count, k = labels.class_count;
  auto counts = labels.class_counts();
  DenseMatrix h(d, k);
  for (idx_t i = 0; i < attrs.node_count; ++i) {
    const idx_t c = labels.labels[i];
    for (idx_t e = attrs.values.offsets[i]; e < attrs.values.offsets[i + 1]; ++e)
      h.at(attrs.values.col_indices[e], c) += attrs.values.values[e];
  }
  for (idx_t a = 0; a < d; ++a)
    for (idx_t c = 0; c < k; ++c) h.at(a, c) /= static_cast<double>(counts[c]);
  return h;
}

GraphFeatures extract_graph_features(const Dataset& dataset) {
  return {dataset.graph.node_count, dataset.graph.edge_count,
          dataset.attributes.attr_count, dataset.labels.class_count};
}

ClassFeatures extract_class_features(const Dataset& dataset) {
  ClassFeatures cf;
  auto cs = extract_class_sizes(dataset.labels);
  cf.sizes = std::move(cs.sizes);
  cf.size_fractions = std::move(cs.fractions);
  cf.preference_mean = extract_preference_mean(dataset.graph, dataset.labels);
  cf.attr_correlation = extract_attr_correlation(dataset.attributes, dataset.labels);
  return cf;
}

namespace {

nlohmann::json matrix_to_json(const DenseMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (idx_t r = 0; r < m.rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (idx_t c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseMatrix matrix_from_json(const nlohmann::json& j) {
  DenseMatrix m(static_cast<idx_t>(j.size()),
                j.empty() ? 0 : static_cast<idx_t>(j[0].size()));
  for (idx_t r = 0; r < m.rows; ++r) {
    if (static_cast<idx_t>(j[r].size()) != m.cols)
      throw std::invalid_argument("ragged matrix in features.json");
    for (idx_t c = 0; c < m.cols; ++c) m.at(r, c) = j[r][c].get<double>();
  }
  return m;
}

}  // namespace

std::string features_to_json(const ClassFeatures& cf, const GraphFeatures& gf) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["graph_features"] = {{"node_count", gf.node_count},
                         {"edge_count", gf.edge_count},
                         {"attr_count", gf.attr_count},
                         {"class_count", gf.class_count}};
  j["class_features"] = {{"sizes", cf.sizes},
                         {"size_fractions", cf.size_fractions},
                         {"preference_mean", matrix_to_json(cf.preference_mean)},
                         {"attr_correlation", matrix_to_json(cf.attr_correlation)}};
  return j.dump(2);
}

void features_from_json(const std::string& text, ClassFeatures& cf, GraphFeatures& gf) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
    throw std::invalid_argument("features.json: unsupported schema_version");
  const auto& g = j.at("graph_features");
  gf.node_count = g.at("node_count").get<idx_t>();
  gf.edge_count = g.at("edge_count").get<idx_t>();
  gf.attr_count = g.at("attr_count").get<idx_t>();
  gf.class_count = g.at("class_count").get<idx_t>();
  const auto& c = j.at("class_features");
  cf.sizes = c.at("sizes").get<std::vector<idx_t>>();
  cf.size_fractions = c.at("size_fractions").get<std::vector<double>>();
  cf.preference_mean = matrix_from_json(c.at("preference_mean"));
  cf.attr_correlation = matrix_from_json(c.at("attr_correlation"));
}

}  // namespace synbench
