#include "synbench/classifiers.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "synbench/kernels.hpp"
#include "synbench/metrics.hpp"
#include "synbench/rng.hpp"

namespace synbench {

namespace {

constexpr std::uint64_t kStreamInit = 0x494e4954;
constexpr std::uint64_t kStreamDropout = 0x44524f50;

using clock_t_ = std::chrono::steady_clock;

double seconds_since(clock_t_::time_point t0) {
  return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

DenseMatrix init_weight(idx_t rows, idx_t cols, Rng& rng) {
  DenseMatrix w(rows, cols);
  const double bound = 1.0 / std::sqrt(static_cast<double>(rows));
  for (double& v : w.data) v = (2.0 * rng.uniform01() - 1.0) * bound;
  return w;
}

// Bernoulli(keep) masks; the 0.5 case consumes one u64 per 64 entries.
class DropoutMask {
 public:
  DropoutMask(Rng& rng, double drop_rate, std::size_t size) : scale_(1.0 / (1.0 - drop_rate)) {
    keep_.resize(size);
    if (drop_rate == 0.0) {
      std::fill(keep_.begin(), keep_.end(), 1);
    } else if (drop_rate == 0.5) {
      std::uint64_t bits = 0;
      for (std::size_t i = 0; i < size; ++i) {
        if (i % 64 == 0) bits = rng.next_u64();
        keep_[i] = static_cast<char>((bits >> (i % 64)) & 1u);
      }
    } else {
      for (std::size_t i = 0; i < size; ++i)
        keep_[i] = rng.uniform01() >= drop_rate ? 1 : 0;
    }
  }

  void apply(const double* in, double* out, std::size_t size) const {
    for (std::size_t i = 0; i < size; ++i) out[i] = keep_[i] ? in[i] * scale_ : 0.0;
  }

 private:
  std::vector<char> keep_;
  double scale_;
};

struct Adam {
  DenseMatrix m, v;
  idx_t t = 0;

  explicit Adam(const DenseMatrix& shape)
      : m(shape.rows, shape.cols), v(shape.rows, shape.cols) {}

  void step(DenseMatrix& w, const DenseMatrix& grad, double lr) {
    ++t;
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(t));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(t));
    for (std::size_t i = 0; i < w.data.size(); ++i) {
      const double g = grad.data[i];
      m.data[i] = b1 * m.data[i] + (1.0 - b1) * g;
      v.data[i] = b2 * v.data[i] + (1.0 - b2) * g * g;
      const double mh = m.data[i] / c1;
      const double vh = v.data[i] / c2;
      w.data[i] -= lr * mh / (std::sqrt(vh) + eps);
    }
  }
};

// Shared state for one mlp/gcn/sgc training or evaluation run. For mlp the
// propagation matrix is absent and the sparse attribute matrix feeds the
// first layer directly; gcn applies S around both layers; sgc is a linear
// model on the K-step propagated dense features.
struct Engine {
  const ModelSpec& spec;
  const Dataset& data;
  idx_t n, d, k;
  CsrMatrix adj;       // gcn only
  CsrMatrix x;         // mlp/gcn: sparse attributes
  DenseMatrix sgc_f;   // sgc only: propagated dense features
  DenseMatrix onehot;  // n x k

  // scratch
  DenseMatrix t0, z1, h1, h1d, t1, z2, probs, dz2, g2, gw1, dh1, dz1, g1, gw0;
  CsrMatrix x_drop;

  Engine(const ModelSpec& s, const Dataset& ds) : spec(s), data(ds) {
    n = ds.graph.node_count;
    d = ds.attributes.attr_count;
    k = ds.labels.class_count;
    if (s.kind == ModelKind::gcn) adj = normalized_adjacency(ds.graph);
    if (s.kind == ModelKind::sgc) {
      sgc_f = propagate(ds.graph, ds.attributes, s.propagation_steps);
    } else {
      x = ds.attributes.values;
      x_drop = x;
    }
    onehot = DenseMatrix(n, k);
    for (idx_t i = 0; i < n; ++i) onehot.at(i, ds.labels.labels[i]) = 1.0;
  }

  std::vector<DenseMatrix> init_weights(Rng& rng) const {
    if (spec.kind == ModelKind::sgc) return {init_weight(d, k, rng)};
    return {init_weight(d, spec.hidden_size, rng),
            init_weight(spec.hidden_size, k, rng)};
  }

  // Forward to logits into z2; dropout masks applied when given.
  void forward(const std::vector<DenseMatrix>& w, const DropoutMask* mask_x,
               const DropoutMask* mask_h) {
    if (spec.kind == ModelKind::sgc) {
      kern::matmul(sgc_f, w[0], z2);
      return;
    }
    const CsrMatrix* input = &x;
    if (mask_x) {
      mask_x->apply(x.values.data(), x_drop.values.data(), x.values.size());
      input = &x_drop;
    }
    kern::spmm(*input, w[0], t0);
    if (spec.kind == ModelKind::gcn) {
      kern::spmm(adj, t0, z1);
    } else {
      z1 = t0;
    }
    kern::relu(z1, h1);
    const DenseMatrix* hidden = &h1;
    if (mask_h) {
      h1d.rows = h1.rows;
      h1d.cols = h1.cols;
      h1d.data.resize(h1.data.size());
      mask_h->apply(h1.data.data(), h1d.data.data(), h1.data.size());
      hidden = &h1d;
    }
    kern::matmul(*hidden, w[1], t1);
    if (spec.kind == ModelKind::gcn) {
      kern::spmm(adj, t1, z2);
    } else {
      z2 = t1;
    }
  }

  // Mean cross-entropy over the given rows plus the L2 term; fills probs.
  double loss_from_logits(const std::vector<DenseMatrix>& w,
                          const std::vector<idx_t>& rows) {
    probs = z2;
    kern::row_softmax(probs);
    double loss = 0.0;
    for (idx_t i : rows) {
      const double p = probs.at(i, data.labels.labels[i]);
      loss -= std::log(std::max(p, 1e-300));
    }
    loss /= static_cast<double>(rows.size());
    double reg = 0.0;
    for (const auto& wm : w)
      for (double v : wm.data) reg += v * v;
    return loss + 0.5 * spec.weight_decay * reg;
  }

  // Gradients for the current forward state; requires probs from
  // loss_from_logits. Adds the weight-decay term.
  void backward(const std::vector<DenseMatrix>& w, const std::vector<idx_t>& rows,
                const DropoutMask* mask_h, std::vector<DenseMatrix>& grads) {
    const double inv_t = 1.0 / static_cast<double>(rows.size());
    dz2.rows = n;
    dz2.cols = k;
    dz2.data.assign(static_cast<std::size_t>(n * k), 0.0);
    for (idx_t i : rows) {
      const double* p = probs.row(i);
      double* g = dz2.row(i);
      for (idx_t c = 0; c < k; ++c) g[c] = p[c] * inv_t;
      g[data.labels.labels[i]] -= inv_t;
    }

    if (spec.kind == ModelKind::sgc) {
      kern::matmul_at_b(sgc_f, dz2, grads[0]);
      add_decay(grads[0], w[0]);
      return;
    }

    const DenseMatrix* g_out = &dz2;
    if (spec.kind == ModelKind::gcn) {
      kern::spmm(adj, dz2, g2);
      g_out = &g2;
    }
    kern::matmul_at_b(mask_h ? h1d : h1, *g_out, grads[1]);
    add_decay(grads[1], w[1]);
    kern::matmul_a_bt(*g_out, w[1], dh1);
    if (mask_h) mask_h->apply(dh1.data.data(), dh1.data.data(), dh1.data.size());
    kern::relu_backward(z1, dh1, dz1);
    const DenseMatrix* g_in = &dz1;
    if (spec.kind == ModelKind::gcn) {
      kern::spmm(adj, dz1, g1);
      g_in = &g1;
    }
    const CsrMatrix* input = mask_h ? &x_drop : &x;
    kern::csr_t_matmul(*input, *g_in, grads[0]);
    add_decay(grads[0], w[0]);
  }

  void add_decay(DenseMatrix& grad, const DenseMatrix& w) const {
    if (spec.weight_decay == 0.0) return;
    for (std::size_t i = 0; i < grad.data.size(); ++i)
      grad.data[i] += spec.weight_decay * w.data[i];
  }

  std::vector<idx_t> predict_labels() const {
    std::vector<idx_t> out(static_cast<std::size_t>(n));
    for (idx_t i = 0; i < n; ++i) {
      const double* row = z2.row(i);
      idx_t best = 0;
      for (idx_t c = 1; c < k; ++c)
        if (row[c] > row[best]) best = c;
      out[i] = best;
    }
    return out;
  }
};

std::vector<idx_t> subset(const std::vector<idx_t>& all, const std::vector<idx_t>& idx) {
  std::vector<idx_t> out;
  out.reserve(idx.size());
  for (idx_t i : idx) out.push_back(all[i]);
  return out;
}

}  // namespace

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::mlp: return "mlp";
    case ModelKind::sgc: return "sgc";
    case ModelKind::gcn: return "gcn";
  }
  return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "mlp") return ModelKind::mlp;
  if (name == "sgc") return ModelKind::sgc;
  if (name == "gcn") return ModelKind::gcn;
  throw std::invalid_argument("unknown model kind '" + name + "'");
}

void ModelSpec::validate() const {
  if (hidden_size < 1) throw std::invalid_argument("hidden_size must be >= 1");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0))
    throw std::invalid_argument("dropout_rate must lie in [0, 1)");
  if (propagation_steps < 1) throw std::invalid_argument("propagation_steps must be >= 1");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
  if (weight_decay < 0.0) throw std::invalid_argument("weight_decay must be >= 0");
  if (early_stopping_patience < 1) throw std::invalid_argument("patience must be >= 1");
  if (max_epochs < 0) throw std::invalid_argument("max_epochs must be >= 0");
}

std::string ModelSpec::describe() const {
  char buf[160];
  if (kind == ModelKind::sgc) {
    std::snprintf(buf, sizeof buf, "lr=%g;wd=%g;K=%lld;patience=%lld", learning_rate,
                  weight_decay, static_cast<long long>(propagation_steps),
                  static_cast<long long>(early_stopping_patience));
  } else {
    std::snprintf(buf, sizeof buf, "lr=%g;wd=%g;hidden=%lld;dropout=%g;patience=%lld",
                  learning_rate, weight_decay, static_cast<long long>(hidden_size),
                  dropout_rate, static_cast<long long>(early_stopping_patience));
  }
  return buf;
}

DenseMatrix propagate(const SparseGraph& graph, const AttributeMatrix& attrs,
                      idx_t k_steps) {
  if (k_steps < 0) throw std::invalid_argument("propagation steps must be >= 0");
  DenseMatrix f(attrs.node_count, attrs.attr_count);
  for (idx_t i = 0; i < attrs.node_count; ++i)
    for (idx_t e = attrs.values.offsets[i]; e < attrs.values.offsets[i + 1]; ++e)
      f.at(i, attrs.values.col_indices[e]) = attrs.values.values[e];
  if (k_steps == 0) return f;
  const CsrMatrix adj = normalized_adjacency(graph);
  DenseMatrix next;
  for (idx_t step = 0; step < k_steps; ++step) {
    kern::spmm(adj, f, next);
    std::swap(f, next);
  }
  return f;
}

TrainedModel train(const ModelSpec& spec, const Dataset& dataset, const Split& split) {
  spec.validate();
  split.validate(dataset.graph.node_count);
  if (split.train.empty() || split.validation.empty())
    throw std::invalid_argument("degenerate split: train and validation must be non-empty");

  Engine eng(spec, dataset);
  Rng init_rng(spec.seed, kStreamInit);
  auto weights = eng.init_weights(init_rng);
  std::vector<DenseMatrix> grads;
  for (const auto& w : weights) grads.emplace_back(w.rows, w.cols);
  std::vector<Adam> opt;
  for (const auto& w : weights) opt.emplace_back(w);

  TrainedModel model;
  model.spec = spec;
  model.best_epoch = -1;
  model.best_val_f1 = -1.0;

  const auto truth_val = subset(dataset.labels.labels, split.validation);
  const bool use_dropout = spec.dropout_rate > 0.0 && spec.kind != ModelKind::sgc;
  Rng drop_rng(spec.seed, kStreamDropout);
  std::vector<DenseMatrix> best_weights = weights;
  idx_t since_best = 0;

  for (idx_t epoch = 0; epoch < spec.max_epochs; ++epoch) {
    const auto t_start = clock_t_::now();
    double train_loss;
    if (use_dropout) {
      DropoutMask mask_x(drop_rng, spec.dropout_rate, eng.x.values.size());
      DropoutMask mask_h(drop_rng, spec.dropout_rate,
                         static_cast<std::size_t>(eng.n * spec.hidden_size));
      eng.forward(weights, &mask_x, &mask_h);
      train_loss = eng.loss_from_logits(weights, split.train);
      eng.backward(weights, split.train, &mask_h, grads);
    } else {
      eng.forward(weights, nullptr, nullptr);
      train_loss = eng.loss_from_logits(weights, split.train);
      eng.backward(weights, split.train, nullptr, grads);
    }
    for (std::size_t w = 0; w < weights.size(); ++w)
      opt[w].step(weights[w], grads[w], spec.learning_rate);
    const double train_seconds = seconds_since(t_start);

    eng.forward(weights, nullptr, nullptr);
    const auto pred = eng.predict_labels();
    const double val_f1 =
        f1_macro(subset(pred, split.validation), truth_val, dataset.labels.class_count);
    model.history.push_back({train_loss, val_f1, train_seconds});

    if (val_f1 > model.best_val_f1) {
      model.best_val_f1 = val_f1;
      model.best_epoch = epoch;
      best_weights = weights;
      since_best = 0;
    } else if (++since_best >= spec.early_stopping_patience) {
      break;
    }
  }

  if (model.best_epoch >= 0) {
    model.weights = std::move(best_weights);
  } else {
    model.weights = std::move(weights);  // max_epochs == 0: initial weights
    model.best_val_f1 = 0.0;
  }
  return model;
}

Predictions predict(const TrainedModel& model, const Dataset& dataset) {
  if (dataset.attributes.attr_count != model.weights.front().rows)
    throw std::invalid_argument("attribute dimension does not match model");
  Engine eng(model.spec, dataset);
  eng.forward(model.weights, nullptr, nullptr);
  Predictions out;
  out.labels = eng.predict_labels();
  out.probabilities = eng.z2;
  kern::row_softmax(out.probabilities);
  return out;
}

double gradient_check(const ModelSpec& spec, const Dataset& dataset, const Split& split) {
  ModelSpec s = spec;
  s.dropout_rate = 0.0;
  s.validate();
  Engine eng(s, dataset);
  Rng init_rng(s.seed, kStreamInit);
  auto weights = eng.init_weights(init_rng);
  std::vector<DenseMatrix> grads;
  for (const auto& w : weights) grads.emplace_back(w.rows, w.cols);

  eng.forward(weights, nullptr, nullptr);
  eng.loss_from_logits(weights, split.train);
  eng.backward(weights, split.train, nullptr, grads);

  const double h = 1e-5;
  double max_err = 0.0;
  for (std::size_t wi = 0; wi < weights.size(); ++wi) {
    for (std::size_t e = 0; e < weights[wi].data.size(); ++e) {
      const double saved = weights[wi].data[e];
      weights[wi].data[e] = saved + h;
      eng.forward(weights, nullptr, nullptr);
      const double up = eng.loss_from_logits(weights, split.train);
      weights[wi].data[e] = saved - h;
      eng.forward(weights, nullptr, nullptr);
      const double down = eng.loss_from_logits(weights, split.train);
      weights[wi].data[e] = saved;
      const double fd = (up - down) / (2.0 * h);
      const double an = grads[wi].data[e];
      const double err = std::abs(an - fd) / std::max({std::abs(an), std::abs(fd), 1e-3});
      max_err = std::max(max_err, err);
    }
  }
  return max_err;
}

std::string TrainedModel::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = model_kind_name(spec.kind);
  j["hidden_size"] = spec.hidden_size;
  j["propagation_steps"] = spec.propagation_steps;
  j["best_epoch"] = best_epoch;
  j["best_val_f1"] = best_val_f1;
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : weights) {
    nlohmann::json wj;
    wj["rows"] = w.rows;
    wj["cols"] = w.cols;
    wj["data"] = w.data;
    ws.push_back(std::move(wj));
  }
  j["weights"] = std::move(ws);
  return j.dump();
}

TrainedModel TrainedModel::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("schema_version").get<int>() != 1)
    throw std::invalid_argument("unsupported model schema_version");
  TrainedModel m;
  m.spec.kind = model_kind_from_name(j.at("kind").get<std::string>());
  m.spec.hidden_size = j.at("hidden_size").get<idx_t>();
  m.spec.propagation_steps = j.at("propagation_steps").get<idx_t>();
  m.best_epoch = j.at("best_epoch").get<idx_t>();
  m.best_val_f1 = j.at("best_val_f1").get<double>();
  for (const auto& wj : j.at("weights")) {
    DenseMatrix w(wj.at("rows").get<idx_t>(), wj.at("cols").get<idx_t>());
    w.data = wj.at("data").get<std::vector<double>>();
    m.weights.push_back(std::move(w));
  }
  return m;
}

}  // namespace synbench
