#include "doctest.h"

#include <stdexcept>

#include "synbench/features.hpp"
#include "synbench/presets.hpp"
#include "synbench/rng.hpp"

using namespace synbench;

TEST_CASE("class sizes: direct counts") {
  auto cs = extract_class_sizes(LabelVector{{0, 0, 1, 1}, 2});
  CHECK(cs.sizes == std::vector<idx_t>{2, 2});
  CHECK(cs.fractions[0] == 0.5);
  CHECK(cs.fractions[1] == 0.5);

  auto single = extract_class_sizes(LabelVector{{0, 0, 0, 0, 0}, 1});
  CHECK(single.sizes == std::vector<idx_t>{5});
  CHECK(single.fractions[0] == 1.0);

  auto skew = extract_class_sizes(LabelVector{{0, 0, 0, 1}, 2});
  CHECK(skew.fractions[0] == 0.75);
  CHECK(skew.fractions[1] == 0.25);
}

TEST_CASE("class sizes: empty class rejected") {
  CHECK_THROWS_AS(extract_class_sizes(LabelVector{{0, 0}, 2}), std::invalid_argument);
}

TEST_CASE("preference mean on the path 0-1-2-3") {
  auto g = SparseGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  auto m = extract_preference_mean(g, LabelVector{{0, 0, 1, 1}, 2});
  CHECK(m.at(0, 0) == doctest::Approx(0.75));
  CHECK(m.at(0, 1) == doctest::Approx(0.25));
  CHECK(m.at(1, 0) == doctest::Approx(0.25));
  CHECK(m.at(1, 1) == doctest::Approx(0.75));
}

TEST_CASE("preference mean of a complete bipartite graph is anti-diagonal") {
  std::vector<std::pair<idx_t, idx_t>> edges;
  for (idx_t u = 0; u < 3; ++u)
    for (idx_t v = 3; v < 6; ++v) edges.emplace_back(u, v);
  auto g = SparseGraph::from_edges(6, edges);
  auto m = extract_preference_mean(g, LabelVector{{0, 0, 0, 1, 1, 1}, 2});
  CHECK(m.at(0, 0) == 0.0);
  CHECK(m.at(0, 1) == 1.0);
  CHECK(m.at(1, 0) == 1.0);
  CHECK(m.at(1, 1) == 0.0);
}

TEST_CASE("preference mean: fully isolated class is an error") {
  auto g = SparseGraph::from_edges(3, {{0, 1}});
  CHECK_THROWS_AS(extract_preference_mean(g, LabelVector{{0, 0, 1}, 2}),
                  std::invalid_argument);
}

TEST_CASE("preference mean rows sum to 1; isolated nodes excluded") {
  Rng rng(5);
  std::vector<std::pair<idx_t, idx_t>> edges;
  for (int e = 0; e < 60; ++e)
    edges.emplace_back(static_cast<idx_t>(rng.below(20)), static_cast<idx_t>(rng.below(20)));
  auto g = SparseGraph::from_edges(24, edges);  // nodes 20..23 isolated
  LabelVector lv;
  lv.class_count = 3;
  for (idx_t i = 0; i < 24; ++i) lv.labels.push_back(i % 3);
  auto m = extract_preference_mean(g, lv);
  for (idx_t r = 0; r < 3; ++r) {
    double sum = 0;
    for (idx_t c = 0; c < 3; ++c) sum += m.at(r, c);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("intra-class-only edges give the identity M") {
  auto g = SparseGraph::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  auto m = extract_preference_mean(g, LabelVector{{0, 0, 0, 1, 1, 1}, 2});
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(0, 1) == 0.0);
  CHECK(m.at(1, 1) == 1.0);
  CHECK(m.at(1, 0) == 0.0);
}

TEST_CASE("attr correlation hand oracle") {
  // X rows [[1,0],[1,1],[0,1],[0,1]], labels [0,0,1,1]
  auto am = AttributeMatrix::from_triplets(
      4, 2, AttrMode::binary,
      {{0, 0, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}, {2, 1, 1.0}, {3, 1, 1.0}});
  auto h = extract_attr_correlation(am, LabelVector{{0, 0, 1, 1}, 2});
  CHECK(h.at(0, 0) == 1.0);
  CHECK(h.at(0, 1) == 0.0);
  CHECK(h.at(1, 0) == 0.5);
  CHECK(h.at(1, 1) == 1.0);
}

TEST_CASE("attr correlation: all-zero X gives all-zero H") {
  auto am = AttributeMatrix::from_triplets(3, 2, AttrMode::binary, {});
  auto h = extract_attr_correlation(am, LabelVector{{0, 1, 2}, 3});
  for (double v : h.data) CHECK(v == 0.0);
}

TEST_CASE("attr correlation: one node per class copies that node's row") {
  auto am = AttributeMatrix::from_triplets(2, 2, AttrMode::binary, {{0, 0, 1.0}, {1, 1, 1.0}});
  auto h = extract_attr_correlation(am, LabelVector{{0, 1}, 2});
  CHECK(h.at(0, 0) == 1.0);
  CHECK(h.at(1, 0) == 0.0);
  CHECK(h.at(0, 1) == 0.0);
  CHECK(h.at(1, 1) == 1.0);
}

TEST_CASE("M and H are invariant under within-class node permutation") {
  auto g = SparseGraph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  LabelVector lv{{0, 1, 0, 1, 0, 1}, 2};
  auto am = AttributeMatrix::from_triplets(
      6, 2, AttrMode::binary, {{0, 0, 1.0}, {2, 0, 1.0}, {1, 1, 1.0}, {3, 1, 1.0}});
  auto m1 = extract_preference_mean(g, lv);
  auto h1 = extract_attr_correlation(am, lv);

  // permute within classes: swap nodes 0<->2 (both class 0) and 1<->3 (class 1)
  std::vector<idx_t> perm{2, 3, 0, 1, 4, 5};
  std::vector<std::pair<idx_t, idx_t>> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  auto g2 = SparseGraph::from_edges(6, edges);
  std::vector<std::tuple<idx_t, idx_t, double>> trip;
  for (idx_t i = 0; i < 6; ++i)
    for (idx_t e = am.values.offsets[i]; e < am.values.offsets[i + 1]; ++e)
      trip.emplace_back(perm[i], am.values.col_indices[e], am.values.values[e]);
  auto am2 = AttributeMatrix::from_triplets(6, 2, AttrMode::binary, trip);
  LabelVector lv2 = lv;
  for (idx_t i = 0; i < 6; ++i) lv2.labels[perm[i]] = lv.labels[i];

  CHECK(extract_preference_mean(g2, lv2).data == m1.data);
  CHECK(extract_attr_correlation(am2, lv2).data == h1.data);
}

TEST_CASE("disjoint union with disjoint class sets is block-diagonal in M") {
  auto g = SparseGraph::from_edges(8, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}});
  LabelVector lv{{0, 0, 1, 1, 2, 2, 3, 3}, 4};
  auto m = extract_preference_mean(g, lv);
  for (idx_t r = 0; r < 2; ++r)
    for (idx_t c = 2; c < 4; ++c) {
      CHECK(m.at(r, c) == 0.0);
      CHECK(m.at(c, r) == 0.0);
    }
}

TEST_CASE("graph features: tiny and preset constants") {
  Dataset ds;
  ds.graph = SparseGraph::from_edges(2, {{0, 1}});
  ds.attributes = AttributeMatrix::from_triplets(2, 1, AttrMode::binary, {});
  ds.labels = LabelVector{{0, 0}, 1};
  auto gf = extract_graph_features(ds);
  CHECK(gf == GraphFeatures{2, 1, 1, 1});

  auto preset = cora_like_params();
  CHECK(preset.node_count == 2708);
  CHECK(preset.target_edge_count == 5278);
  CHECK(preset.attr_count == 1433);
  CHECK(preset.class_count == 7);
}

TEST_CASE("features.json round trip") {
  ClassFeatures cf;
  cf.sizes = {3, 2};
  cf.size_fractions = {0.6, 0.4};
  cf.preference_mean = DenseMatrix(2, 2, 0.5);
  cf.attr_correlation = DenseMatrix(3, 2, 0.25);
  GraphFeatures gf{5, 4, 3, 2};
  auto text = features_to_json(cf, gf);
  ClassFeatures cf2;
  GraphFeatures gf2;
  features_from_json(text, cf2, gf2);
  CHECK(gf2 == gf);
  CHECK(cf2.sizes == cf.sizes);
  CHECK(cf2.size_fractions == cf.size_fractions);
  CHECK(cf2.preference_mean == cf.preference_mean);
  CHECK(cf2.attr_correlation == cf.attr_correlation);
}
