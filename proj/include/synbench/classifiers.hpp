#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "synbench/graph.hpp"
#include "synbench/split.hpp"

namespace synbench {

enum class ModelKind { mlp, sgc, gcn };

const char* model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

struct ModelSpec {
  ModelKind kind = ModelKind::gcn;
  idx_t hidden_size = 64;
  double dropout_rate = 0.5;
  idx_t propagation_steps = 2;  // sgc only
  double learning_rate = 0.01;
  double weight_decay = 5e-4;
  idx_t early_stopping_patience = 100;
  idx_t max_epochs = 500;
  std::uint64_t seed = 0;

  void validate() const;
  /// Compact "lr=...;wd=...;..." form for reports.
  std::string describe() const;
};

struct EpochRecord {
  double train_loss = 0.0;
  double val_f1 = 0.0;
  double seconds = 0.0;  // wall time of the train step (fwd+bwd+update)
};

struct TrainedModel {
  ModelSpec spec;
  std::vector<DenseMatrix> weights;  // [W0, W1] for mlp/gcn, [W] for sgc
  std::vector<EpochRecord> history;
  idx_t best_epoch = -1;
  double best_val_f1 = 0.0;

  std::string to_json() const;
  static TrainedModel from_json(const std::string& text);
};

struct Predictions {
  DenseMatrix probabilities;     // n x k, rows sum to 1
  std::vector<idx_t> labels;     // row argmax, first maximum on ties
};

/// K-step feature propagation A_hat^K X, densified. K = 0 returns X.
DenseMatrix propagate(const SparseGraph& graph, const AttributeMatrix& attrs, idx_t k_steps);

/// Full-batch training: softmax cross-entropy over train nodes plus
/// 0.5 * weight_decay * ||W||^2, adaptive-moment updates
/// (beta1 0.9, beta2 0.999, eps 1e-8), early stopping on validation f1-macro
/// with best-epoch weight restore.
TrainedModel train(const ModelSpec& spec, const Dataset& dataset, const Split& split);

/// Deterministic forward pass with dropout disabled.
Predictions predict(const TrainedModel& model, const Dataset& dataset);

/// Max relative error between analytic gradients and central finite
/// differences (h = 1e-5) over all weights at the initial point, dropout
/// disabled. Meant for tiny double-precision instances.
double gradient_check(const ModelSpec& spec, const Dataset& dataset, const Split& split);

}  // namespace synbench
