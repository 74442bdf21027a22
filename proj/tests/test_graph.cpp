#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "synbench/graph.hpp"
#include "synbench/rng.hpp"

using namespace synbench;

TEST_CASE("from_edges symmetrizes and deduplicates") {
  auto g = SparseGraph::from_edges(3, {{0, 1}, {1, 0}, {1, 2}, {1, 2}});
  CHECK(g.edge_count == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(0) == 1);
  g.validate();
}

TEST_CASE("from_edges drops self-loops and reports them") {
  idx_t dropped = 0;
  auto g = SparseGraph::from_edges(3, {{0, 0}, {0, 1}, {2, 2}}, &dropped);
  CHECK(dropped == 2);
  CHECK(g.edge_count == 1);
}

TEST_CASE("from_edges rejects out-of-range endpoints") {
  CHECK_THROWS_AS(SparseGraph::from_edges(2, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("validate catches asymmetry") {
  SparseGraph g;
  g.node_count = 2;
  g.edge_count = 1;
  g.row_offsets = {0, 1, 2};
  g.column_indices = {1, 1};  // node 1 lists itself instead of 0
  CHECK_THROWS(g.validate());
}

TEST_CASE("normalized adjacency: 2 nodes, 1 edge -> all entries 0.5") {
  auto g = SparseGraph::from_edges(2, {{0, 1}});
  auto a = normalized_adjacency(g);
  REQUIRE(a.nnz() == 4);
  for (double v : a.values) CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("normalized adjacency: empty graph is the identity") {
  auto g = SparseGraph::from_edges(3, {});
  auto a = normalized_adjacency(g);
  REQUIRE(a.nnz() == 3);
  for (idx_t i = 0; i < 3; ++i) {
    CHECK(a.row_cols(i).size() == 1);
    CHECK(a.row_cols(i)[0] == i);
    CHECK(a.row_vals(i)[0] == 1.0);
  }
}

TEST_CASE("normalized adjacency: path 0-1-2") {
  auto g = SparseGraph::from_edges(3, {{0, 1}, {1, 2}});
  auto a = normalized_adjacency(g);
  // entry (0,1) = 1/sqrt(2*3)
  bool found = false;
  for (idx_t e = a.offsets[0]; e < a.offsets[1]; ++e)
    if (a.col_indices[e] == 1) {
      CHECK(a.values[e] == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-15));
      found = true;
    }
  CHECK(found);
}

namespace {

SparseGraph random_graph(idx_t n, idx_t m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<idx_t, idx_t>> edges;
  for (idx_t e = 0; e < m; ++e) {
    idx_t u = static_cast<idx_t>(rng.below(static_cast<std::uint64_t>(n)));
    idx_t v = static_cast<idx_t>(rng.below(static_cast<std::uint64_t>(n)));
    if (u != v) edges.emplace_back(u, v);
  }
  return SparseGraph::from_edges(n, std::move(edges));
}

}  // namespace

TEST_CASE("normalized adjacency is exactly symmetric on random graphs") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto g = random_graph(40, 120, seed);
    auto a = normalized_adjacency(g);
    for (idx_t i = 0; i < a.rows; ++i) {
      for (idx_t e = a.offsets[i]; e < a.offsets[i + 1]; ++e) {
        const idx_t j = a.col_indices[e];
        // find (j, i)
        double mirror = -1.0;
        for (idx_t f = a.offsets[j]; f < a.offsets[j + 1]; ++f)
          if (a.col_indices[f] == i) mirror = a.values[f];
        CHECK(a.values[e] == mirror);  // bitwise
      }
    }
  }
}

TEST_CASE("normalized adjacency row sums in (0, sqrt(max_deg+1)]") {
  auto g = random_graph(60, 150, 9);
  auto a = normalized_adjacency(g);
  idx_t dmax = 0;
  for (idx_t i = 0; i < g.node_count; ++i) dmax = std::max(dmax, g.degree(i));
  for (idx_t i = 0; i < a.rows; ++i) {
    double sum = 0;
    for (idx_t e = a.offsets[i]; e < a.offsets[i + 1]; ++e) sum += a.values[e];
    CHECK(sum > 0.0);
    CHECK(sum <= std::sqrt(static_cast<double>(dmax + 1)) + 1e-12);
  }
}

TEST_CASE("regular graph rows sum to 1") {
  // cycle of 6 nodes, degree 2 everywhere
  auto g = SparseGraph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  auto a = normalized_adjacency(g);
  for (idx_t i = 0; i < a.rows; ++i) {
    double sum = 0;
    for (idx_t e = a.offsets[i]; e < a.offsets[i + 1]; ++e) sum += a.values[e];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("label vector rejects empty classes and bad labels") {
  LabelVector lv{{0, 0, 2}, 3};
  CHECK_THROWS_AS(lv.validate(), std::invalid_argument);  // class 1 empty
  LabelVector bad{{0, 3}, 2};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("binary attribute matrix rejects non-binary values") {
  const std::vector<std::tuple<idx_t, idx_t, double>> bad{{0, 0, 0.5}};
  CHECK_THROWS_AS(AttributeMatrix::from_triplets(2, 2, AttrMode::binary, bad),
                  std::invalid_argument);
  auto am = AttributeMatrix::from_triplets(2, 2, AttrMode::binary, {{0, 1, 1.0}, {1, 0, 1.0}});
  am.validate();
  CHECK(am.values.nnz() == 2);
}
