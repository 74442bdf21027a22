#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <set>
#include <sstream>

#include "synbench/harness.hpp"
#include "synbench/presets.hpp"
#include "synbench/rng.hpp"

using namespace synbench;

namespace {

// Brute-force oracle: build the full confusion matrix, then per-class scores.
double oracle_f1_macro(const std::vector<idx_t>& pred, const std::vector<idx_t>& truth,
                       idx_t k) {
  std::vector<std::vector<idx_t>> conf(static_cast<std::size_t>(k),
                                       std::vector<idx_t>(static_cast<std::size_t>(k), 0));
  for (std::size_t i = 0; i < truth.size(); ++i) ++conf[truth[i]][pred[i]];
  double sum = 0.0;
  for (idx_t c = 0; c < k; ++c) {
    idx_t tp = conf[c][c], fp = 0, fn = 0;
    for (idx_t r = 0; r < k; ++r)
      if (r != c) {
        fp += conf[r][c];
        fn += conf[c][r];
      }
    const double precision =
        tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    const double recall =
        tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    sum += precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
  }
  return sum / static_cast<double>(k);
}

double oracle_accuracy(const std::vector<idx_t>& pred, const std::vector<idx_t>& truth,
                       idx_t k) {
  std::vector<std::vector<idx_t>> conf(static_cast<std::size_t>(k),
                                       std::vector<idx_t>(static_cast<std::size_t>(k), 0));
  for (std::size_t i = 0; i < truth.size(); ++i) ++conf[truth[i]][pred[i]];
  idx_t trace = 0;
  for (idx_t c = 0; c < k; ++c) trace += conf[c][c];
  return static_cast<double>(trace) / static_cast<double>(truth.size());
}

GenParams tiny_params(std::uint64_t seed = 0) {
  GenParams p;
  p.class_fractions = {0.5, 0.5};
  p.class_count = 2;
  p.node_count = 160;
  p.target_edge_count = 320;
  p.attr_count = 8;
  p.preference_mean = DenseMatrix(2, 2, 0.2);
  p.preference_mean.at(0, 0) = p.preference_mean.at(1, 1) = 0.8;
  p.attr_correlation = DenseMatrix(8, 2, 0.1);
  for (idx_t a = 0; a < 4; ++a) p.attr_correlation.at(a, 0) = 0.5;
  for (idx_t a = 4; a < 8; ++a) p.attr_correlation.at(a, 1) = 0.5;
  p.seed = seed;
  return p;
}

HyperGrid tiny_grid() {
  HyperGrid g;
  g.weight_decay = {5e-4};
  g.learning_rate = {0.01, 0.05};
  g.patience = {20};
  g.hidden = {8};
  g.dropout = {0.5};
  g.max_epochs = 60;
  return g;
}

}  // namespace

TEST_CASE("stratified split: 5/5 classes at 60/20/20 give 3/1/1 per class") {
  LabelVector lv;
  lv.class_count = 2;
  for (idx_t i = 0; i < 10; ++i) lv.labels.push_back(i < 5 ? 0 : 1);
  auto s = stratified_split(lv, {0.6, 0.2, 0.2}, 1);
  CHECK(s.train.size() == 6);
  CHECK(s.validation.size() == 2);
  CHECK(s.test.size() == 2);
  for (idx_t c = 0; c < 2; ++c) {
    idx_t tr = 0;
    for (idx_t i : s.train) tr += lv.labels[i] == c ? 1 : 0;
    CHECK(tr == 3);
  }
}

TEST_CASE("split ratios must be positive") {
  LabelVector lv;
  lv.class_count = 1;
  lv.labels.assign(10, 0);
  CHECK_THROWS_AS(stratified_split(lv, {1.0, 0.0, 0.0}, 0), std::invalid_argument);
}

TEST_CASE("stratified split is deterministic in the seed") {
  LabelVector lv;
  lv.class_count = 3;
  for (idx_t i = 0; i < 60; ++i) lv.labels.push_back(i % 3);
  auto a = stratified_split(lv, {0.6, 0.2, 0.2}, 5);
  auto b = stratified_split(lv, {0.6, 0.2, 0.2}, 5);
  CHECK(a.train == b.train);
  CHECK(a.validation == b.validation);
  CHECK(a.test == b.test);
}

TEST_CASE("stratified split rejects classes smaller than 3") {
  LabelVector lv{{0, 0, 0, 1, 1}, 2};
  CHECK_THROWS_AS(stratified_split(lv, {0.6, 0.2, 0.2}, 0), std::invalid_argument);
}

TEST_CASE("per-class train share within one node of 60%") {
  auto lv = assign_labels({0.3, 0.3, 0.2, 0.2}, 173, 9);
  auto s = stratified_split(lv, {0.6, 0.2, 0.2}, 4);
  auto counts = lv.class_counts();
  std::vector<idx_t> train_per_class(4, 0);
  for (idx_t i : s.train) ++train_per_class[lv.labels[i]];
  for (idx_t c = 0; c < 4; ++c)
    CHECK(std::abs(static_cast<double>(train_per_class[c]) -
                   0.6 * static_cast<double>(counts[c])) <= 1.0);
}

TEST_CASE("uniform split covers all nodes disjointly") {
  auto s = uniform_split(101, {0.6, 0.2, 0.2}, 3);
  s.validate(101);
  CHECK(s.train.size() == 61);
  CHECK(s.validation.size() == 20);
  CHECK(s.test.size() == 20);
}

TEST_CASE("f1 hand oracles") {
  CHECK(f1_macro(std::vector<idx_t>{0, 1, 1, 1}, std::vector<idx_t>{0, 0, 1, 1}, 2) ==
        doctest::Approx((2.0 / 3.0 + 0.8) / 2.0).epsilon(1e-12));
  CHECK(f1_macro(std::vector<idx_t>{0, 0}, std::vector<idx_t>{0, 0}, 1) == 1.0);
  CHECK(f1_macro(std::vector<idx_t>{1, 0}, std::vector<idx_t>{0, 1}, 2) == 0.0);
}

TEST_CASE("accuracy hand oracles") {
  CHECK(accuracy(std::vector<idx_t>{0, 1, 1, 1}, std::vector<idx_t>{0, 0, 1, 1}) == 0.75);
  CHECK(accuracy(std::vector<idx_t>{2, 2}, std::vector<idx_t>{2, 2}) == 1.0);
}

TEST_CASE("metrics match the confusion-matrix oracle exactly") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const idx_t k = 2 + static_cast<idx_t>(rng.below(9));
    const std::size_t n = 1 + rng.below(60);
    std::vector<idx_t> pred(n), truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      pred[i] = static_cast<idx_t>(rng.below(static_cast<std::uint64_t>(k)));
      truth[i] = static_cast<idx_t>(rng.below(static_cast<std::uint64_t>(k)));
    }
    CHECK(f1_macro(pred, truth, k) == oracle_f1_macro(pred, truth, k));
    CHECK(accuracy(pred, truth) == oracle_accuracy(pred, truth, k));
  }
}

TEST_CASE("f1 is invariant under a common class relabeling") {
  Rng rng(7);
  const idx_t k = 5;
  std::vector<idx_t> pred(80), truth(80);
  for (std::size_t i = 0; i < 80; ++i) {
    pred[i] = static_cast<idx_t>(rng.below(k));
    truth[i] = static_cast<idx_t>(rng.below(k));
  }
  std::vector<idx_t> sigma{3, 0, 4, 1, 2};
  std::vector<idx_t> pred2(80), truth2(80);
  for (std::size_t i = 0; i < 80; ++i) {
    pred2[i] = sigma[pred[i]];
    truth2[i] = sigma[truth[i]];
  }
  CHECK(f1_macro(pred, truth, k) == doctest::Approx(f1_macro(pred2, truth2, k)).epsilon(1e-15));
}

TEST_CASE("f1 rejects out-of-range labels") {
  CHECK_THROWS_AS(f1_macro(std::vector<idx_t>{2}, std::vector<idx_t>{0}, 2),
                  std::invalid_argument);
}

TEST_CASE("grid search: singleton grid returns that spec") {
  auto ds = generate(tiny_params(1));
  auto split = stratified_split(ds.labels, {0.6, 0.2, 0.2}, 2);
  HyperGrid g = tiny_grid();
  g.learning_rate = {0.01};
  auto r = grid_search(ModelKind::mlp, g, ds, split, 3);
  CHECK(r.best.learning_rate == 0.01);
  CHECK(r.best.weight_decay == 5e-4);
}

TEST_CASE("grid search prefers the learnable learning rate") {
  auto ds = generate(tiny_params(2));
  auto split = stratified_split(ds.labels, {0.6, 0.2, 0.2}, 2);
  HyperGrid g = tiny_grid();
  g.learning_rate = {0.01, 1e-12};
  auto r = grid_search(ModelKind::mlp, g, ds, split, 3);
  CHECK(r.best.learning_rate == 0.01);
  CHECK(r.validation_f1 > 0.5);
}

TEST_CASE("grid search is deterministic") {
  auto ds = generate(tiny_params(3));
  auto split = stratified_split(ds.labels, {0.6, 0.2, 0.2}, 2);
  auto a = grid_search(ModelKind::mlp, tiny_grid(), ds, split, 4);
  auto b = grid_search(ModelKind::mlp, tiny_grid(), ds, split, 4);
  CHECK(a.best.learning_rate == b.best.learning_rate);
  CHECK(a.validation_f1 == b.validation_f1);
}

TEST_CASE("default grids match the protocol search spaces") {
  auto mlp = HyperGrid::defaults(ModelKind::mlp);
  CHECK(mlp.weight_decay == std::vector<double>{0.0, 5e-6, 5e-5, 5e-4});
  CHECK(mlp.learning_rate == std::vector<double>{0.002, 0.01, 0.05});
  CHECK(mlp.patience == std::vector<idx_t>{40, 100});
  CHECK(mlp.hidden == std::vector<idx_t>{64});
  CHECK(mlp.enumerate(ModelKind::mlp).size() == 24);

  auto gcn = HyperGrid::defaults(ModelKind::gcn);
  CHECK(gcn.hidden == std::vector<idx_t>{16, 32, 64});
  CHECK(gcn.enumerate(ModelKind::gcn).size() == 72);

  auto sgc = HyperGrid::defaults(ModelKind::sgc);
  CHECK(sgc.learning_rate == std::vector<double>{0.2});
  CHECK(sgc.max_epochs == 100);
  CHECK(sgc.enumerate(ModelKind::sgc).size() == 12);
}

TEST_CASE("measure_epoch_time is positive") {
  auto ds = generate(tiny_params(4));
  ModelSpec spec;
  spec.hidden_size = 8;
  spec.seed = 1;
  CHECK(measure_epoch_time(ModelKind::gcn, ds, spec) > 0.0);
}

namespace {

BenchConfig tiny_bench() {
  BenchConfig cfg;
  cfg.base = tiny_params();
  cfg.axis.kind = AxisKind::preference;
  cfg.axis.values = {AxisPoint::number(0), AxisPoint::number(8)};
  cfg.models = {ModelKind::mlp};
  cfg.graphs_per_setting = 2;
  cfg.restarts = 2;
  cfg.master_seed = 11;
  cfg.measure_timing = false;
  cfg.workers = 1;
  cfg.grids.emplace(ModelKind::mlp, tiny_grid());
  return cfg;
}

}  // namespace

TEST_CASE("run_benchmark: record shape and aggregate counts") {
  auto report = run_benchmark(tiny_bench());
  CHECK(report.records.size() == 2 * 2 * 2);  // axis x graphs x restarts
  CHECK(report.aggregates.size() == 2);       // per axis point x model
  for (const auto& rec : report.records) {
    CHECK_FALSE(rec.failed);
    CHECK(rec.f1 >= 0.0);
    CHECK(rec.f1 <= 1.0);
    CHECK(rec.epochs > 0);
    CHECK(rec.epoch_time_s == 0.0);  // measure_timing off
  }
  const auto& agg = report.aggregate("0", "mlp");
  CHECK(agg.count == 4);
  // mlp sees the same attributes regardless of beta
  CHECK(report.aggregate("8", "mlp").count == 4);
}

TEST_CASE("run_benchmark is deterministic and worker-count independent") {
  auto cfg = tiny_bench();
  cfg.workers = 1;
  auto a = run_benchmark(cfg);
  cfg.workers = 2;
  auto b = run_benchmark(cfg);
  CHECK(a.to_csv() == b.to_csv());
}

TEST_CASE("run_benchmark records failures and continues") {
  auto cfg = tiny_bench();
  cfg.base.class_fractions = {0.8, 0.2};  // class 1 gets 2 nodes: stratified split fails
  cfg.base.node_count = 10;
  cfg.base.target_edge_count = 16;
  auto report = run_benchmark(cfg);
  CHECK(report.records.size() == 8);
  for (const auto& rec : report.records) {
    CHECK(rec.failed);
    CHECK(rec.note.find("generation") != std::string::npos);
  }
  for (const auto& agg : report.aggregates) CHECK(agg.count == 0);
}

TEST_CASE("csv layout: header, agg flags, plotdata files") {
  auto report = run_benchmark(tiny_bench());
  const std::string csv = report.to_csv();
  CHECK(csv.rfind("axis_kind,axis_value,model,graph_seed,restart_seed,hyperparams,"
                  "f1_macro,accuracy,epochs,epoch_time_s,agg,f1_macro_std,accuracy_std,"
                  "epoch_time_std,note\n",
                  0) == 0);
  std::size_t agg_rows = 0, raw_rows = 0;
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::size_t start = 0, pos;
    while ((pos = line.find(',', start)) != std::string::npos) {
      fields.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    fields.push_back(line.substr(start));
    REQUIRE(fields.size() == 15);
    (fields[10] == "1" ? agg_rows : raw_rows) += 1;
  }
  CHECK(raw_rows == 8);
  CHECK(agg_rows == 2);

  auto dir = std::filesystem::temp_directory_path() / "synbench_test_plotdata";
  std::filesystem::remove_all(dir);
  report.write_plotdata(dir);
  CHECK(std::filesystem::exists(dir / "f1_macro.tsv"));
  CHECK(std::filesystem::exists(dir / "accuracy.tsv"));
  CHECK(std::filesystem::exists(dir / "epoch_time.tsv"));
}

TEST_CASE("apply_axis_point covers every axis kind") {
  auto base = cora_like_params();
  auto a = apply_axis_point(base, AxisKind::class_size, AxisPoint::balanced());
  for (double f : a.class_fractions) CHECK(f == doctest::Approx(1.0 / 7));
  auto b = apply_axis_point(base, AxisKind::preference, AxisPoint::number(8));
  double diag = 0;
  for (idx_t c = 0; c < 7; ++c) diag += b.preference_mean.at(c, c);
  CHECK(diag / 7 == doctest::Approx(0.03).epsilon(1e-9));
  auto c = apply_axis_point(base, AxisKind::attribute, AxisPoint::uniform());
  CHECK(c.attr_correlation.at(0, 0) == c.attr_correlation.at(100, 3));
  auto d = apply_axis_point(base, AxisKind::graph_size, AxisPoint::pair(6000, 10000));
  CHECK(d.node_count == 6000);
  CHECK(d.target_edge_count == 10000);
  auto e = apply_axis_point(base, AxisKind::edge_density, AxisPoint::number(15000));
  CHECK(e.node_count == base.node_count);
  CHECK(e.target_edge_count == 15000);
}
