#pragma once
#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synbench/classifiers.hpp"
#include "synbench/generator.hpp"
#include "synbench/metrics.hpp"
#include "synbench/split.hpp"
#include "synbench/transforms.hpp"

namespace synbench {

/// Hyperparameter grid; defaults follow the MLP/GCN/SGC search spaces the
/// protocol prescribes.
struct HyperGrid {
  std::vector<double> weight_decay;
  std::vector<double> learning_rate;
  std::vector<idx_t> patience;
  std::vector<idx_t> hidden;
  std::vector<double> dropout;
  std::vector<idx_t> propagation_steps;  // sgc only
  idx_t max_epochs = 500;

  static HyperGrid defaults(ModelKind kind);
  /// All grid points as ModelSpecs (seed left 0).
  std::vector<ModelSpec> enumerate(ModelKind kind) const;
};

struct GridSearchResult {
  ModelSpec best;
  double validation_f1 = 0.0;
};

/// Trains one model per grid point (all with the given seed) and returns the
/// spec with the highest validation f1-macro. Ties break toward lower weight
/// decay, then lower learning rate, then grid declaration order.
GridSearchResult grid_search(ModelKind kind, const HyperGrid& grid, const Dataset& dataset,
                             const Split& split, std::uint64_t seed);

/// Mean wall-clock seconds of one training step (forward+backward+update),
/// measured over at least 20 epochs after 3 warm-up epochs.
double measure_epoch_time(ModelKind kind, const Dataset& dataset, const ModelSpec& spec);

struct BenchRecord {
  std::string axis_value;
  std::string model;
  std::uint64_t graph_seed = 0;
  idx_t restart = 0;
  std::string hyperparams;
  double f1 = 0.0;
  double acc = 0.0;
  idx_t epochs = 0;
  double epoch_time_s = 0.0;
  bool failed = false;
  std::string note;
};

struct BenchAggregate {
  std::string axis_value;
  std::string model;
  idx_t count = 0;
  double f1_mean = 0.0, f1_std = 0.0;
  double acc_mean = 0.0, acc_std = 0.0;
  double epochs_mean = 0.0;
  double epoch_time_mean = 0.0, epoch_time_std = 0.0;
};

struct BenchReport {
  std::string axis_kind;
  std::vector<BenchRecord> records;
  std::vector<BenchAggregate> aggregates;

  std::string to_csv() const;
  void write_csv(const std::filesystem::path& file) const;
  /// One TSV per metric (x, model, mean, std) under the given directory.
  void write_plotdata(const std::filesystem::path& directory) const;

  const BenchAggregate& aggregate(const std::string& axis_value,
                                  const std::string& model) const;
};

struct BenchConfig {
  GenParams base;  // axis points override fractions / M / H / sizes
  SweepAxis axis;
  std::vector<ModelKind> models;
  std::array<double, 3> ratios = {0.6, 0.2, 0.2};
  idx_t graphs_per_setting = 3;
  idx_t restarts = 3;
  std::uint64_t master_seed = 42;
  bool stratified = true;      // uniform split when false
  bool measure_timing = true;  // when false, epoch_time_s is reported as 0
  int workers = 0;             // 0 = all hardware threads
  std::map<ModelKind, HyperGrid> grids;  // per-model override, defaults otherwise

  void validate() const;
};

/// Applies one axis point to the base parameters.
GenParams apply_axis_point(const GenParams& base, AxisKind kind, const AxisPoint& point);

/// The full protocol: per axis point, generate graphs_per_setting graphs
/// (seeds s, s+1, ... with s derived from the master seed and axis index);
/// per graph, grid-search once on restart 0, then train the selected spec
/// with `restarts` restart seeds; record test f1-macro/accuracy and mean
/// epoch time; aggregate mean and population std per (axis point, model).
/// Generation or training failures are recorded per record and the run
/// continues. Results are independent of the worker count.
BenchReport run_benchmark(const BenchConfig& config);

}  // namespace synbench
