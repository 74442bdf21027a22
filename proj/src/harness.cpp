#include "synbench/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "synbench/par.hpp"
#include "synbench/rng.hpp"

namespace synbench {

namespace {

constexpr std::uint64_t kStreamAxis = 0x41584953;
constexpr std::uint64_t kStreamRestart = 0x52535452;
constexpr std::uint64_t kStreamBenchSplit = 0x42535054;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double mean_epoch_seconds(const std::vector<EpochRecord>& history) {
  // Skip the first 3 warm-up epochs when there is enough history.
  const std::size_t skip = history.size() > 6 ? 3 : 0;
  if (history.size() <= skip) return 0.0;
  double sum = 0.0;
  for (std::size_t i = skip; i < history.size(); ++i) sum += history[i].seconds;
  return sum / static_cast<double>(history.size() - skip);
}

}  // namespace

HyperGrid HyperGrid::defaults(ModelKind kind) {
  HyperGrid g;
  switch (kind) {
    case ModelKind::mlp:
      g.weight_decay = {0.0, 5e-6, 5e-5, 5e-4};
      g.learning_rate = {0.002, 0.01, 0.05};
      g.patience = {40, 100};
      g.hidden = {64};
      g.dropout = {0.5};
      g.max_epochs = 500;
      break;
    case ModelKind::gcn:
      g.weight_decay = {0.0, 5e-6, 5e-5, 5e-4};
      g.learning_rate = {0.002, 0.01, 0.05};
      g.patience = {40, 100};
      g.hidden = {16, 32, 64};
      g.dropout = {0.5};
      g.max_epochs = 500;
      break;
    case ModelKind::sgc:
      g.weight_decay = {0.0, 5e-6, 5e-5, 5e-4};
      g.learning_rate = {0.2};
      g.patience = {40};
      g.propagation_steps = {1, 2, 3};
      g.max_epochs = 100;
      break;
  }
  return g;
}

std::vector<ModelSpec> HyperGrid::enumerate(ModelKind kind) const {
  if (weight_decay.empty() || learning_rate.empty() || patience.empty())
    throw std::invalid_argument("grid must list weight_decay, learning_rate and patience");
  const std::vector<idx_t> hiddens =
      kind == ModelKind::sgc ? std::vector<idx_t>{1} : hidden;
  const std::vector<double> dropouts =
      kind == ModelKind::sgc ? std::vector<double>{0.0} : dropout;
  const std::vector<idx_t> ks =
      kind == ModelKind::sgc
          ? (propagation_steps.empty() ? std::vector<idx_t>{2} : propagation_steps)
          : std::vector<idx_t>{2};
  if (kind != ModelKind::sgc && (hiddens.empty() || dropouts.empty()))
    throw std::invalid_argument("grid must list hidden and dropout");

  std::vector<ModelSpec> out;
  for (double wd : weight_decay)
    for (double lr : learning_rate)
      for (idx_t pat : patience)
        for (idx_t h : hiddens)
          for (double dr : dropouts)
            for (idx_t kk : ks) {
              ModelSpec s;
              s.kind = kind;
              s.weight_decay = wd;
              s.learning_rate = lr;
              s.early_stopping_patience = pat;
              s.hidden_size = h;
              s.dropout_rate = dr;
              s.propagation_steps = kk;
              s.max_epochs = max_epochs;
              out.push_back(s);
            }
  return out;
}

GridSearchResult grid_search(ModelKind kind, const HyperGrid& grid, const Dataset& dataset,
                             const Split& split, std::uint64_t seed) {
  auto specs = grid.enumerate(kind);
  if (specs.empty()) throw std::invalid_argument("empty hyperparameter grid");
  GridSearchResult best;
  bool have = false;
  for (auto& spec : specs) {
    spec.seed = seed;
    TrainedModel tm = train(spec, dataset, split);
    const double score = tm.best_val_f1;
    bool better = false;
    if (!have || score > best.validation_f1) {
      better = true;
    } else if (score == best.validation_f1) {
      if (spec.weight_decay < best.best.weight_decay) better = true;
      else if (spec.weight_decay == best.best.weight_decay &&
               spec.learning_rate < best.best.learning_rate)
        better = true;
      // equal on both: keep the earlier grid point
    }
    if (better) {
      best.best = spec;
      best.validation_f1 = score;
      have = true;
    }
  }
  return best;
}

double measure_epoch_time(ModelKind kind, const Dataset& dataset, const ModelSpec& spec) {
  ModelSpec s = spec;
  s.kind = kind;
  s.max_epochs = 23;  // 3 warm-up + 20 measured
  s.early_stopping_patience = s.max_epochs + 1;
  Split split;
  try {
    split = stratified_split(dataset.labels, {0.6, 0.2, 0.2}, s.seed);
  } catch (const std::invalid_argument&) {
    split = uniform_split(dataset.graph.node_count, {0.6, 0.2, 0.2}, s.seed);
  }
  TrainedModel tm = train(s, dataset, split);
  double sum = 0.0;
  for (std::size_t i = 3; i < tm.history.size(); ++i) sum += tm.history[i].seconds;
  return sum / static_cast<double>(tm.history.size() - 3);
}

void BenchConfig::validate() const {
  base.validate();
  axis.validate();
  if (models.empty()) throw std::invalid_argument("bench needs at least one model");
  if (graphs_per_setting < 1) throw std::invalid_argument("graphs_per_setting must be >= 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  double rsum = 0.0;
  for (double r : ratios) {
    if (!(r > 0.0)) throw std::invalid_argument("split ratios must be positive");
    rsum += r;
  }
  if (std::abs(rsum - 1.0) > 1e-9)
    throw std::invalid_argument("split ratios must sum to 1");
}

GenParams apply_axis_point(const GenParams& base, AxisKind kind, const AxisPoint& point) {
  GenParams p = base;
  switch (kind) {
    case AxisKind::class_size:
      p.class_fractions = point.tag == AxisPoint::Tag::balanced
                              ? balanced_class_sizes(base.class_count)
                              : configure_class_sizes(point.value, base.class_count);
      break;
    case AxisKind::preference:
      p.preference_mean = configure_preference_mean(base.preference_mean, point.value);
      break;
    case AxisKind::attribute:
      p.attr_correlation = point.tag == AxisPoint::Tag::uniform
                               ? uniform_attr_correlation(base.attr_correlation)
                               : mix_attr_correlation(base.attr_correlation, point.value);
      break;
    case AxisKind::graph_size:
      p.node_count = point.n;
      p.target_edge_count = point.m;
      break;
    case AxisKind::edge_density:
      p.target_edge_count = static_cast<idx_t>(point.value);
      break;
  }
  return p;
}

namespace {

struct Task {
  std::size_t axis_index;
  idx_t graph_index;
};

}  // namespace

BenchReport run_benchmark(const BenchConfig& config) {
  config.validate();

  std::map<ModelKind, HyperGrid> grids = config.grids;
  for (ModelKind mk : config.models)
    if (!grids.count(mk)) grids.emplace(mk, HyperGrid::defaults(mk));

  std::vector<Task> tasks;
  for (std::size_t a = 0; a < config.axis.values.size(); ++a)
    for (idx_t g = 0; g < config.graphs_per_setting; ++g)
      tasks.push_back({a, g});

  const std::size_t rows_per_task = config.models.size() *
                                    static_cast<std::size_t>(config.restarts);
  std::vector<BenchRecord> records(tasks.size() * rows_per_task);

  auto run_task = [&](const Task& task) {
    const AxisPoint& point = config.axis.values[task.axis_index];
    const std::string axis_value = point.str();
    const std::uint64_t graph_seed =
        mix64(config.master_seed, kStreamAxis + task.axis_index) +
        static_cast<std::uint64_t>(task.graph_index);
    BenchRecord* row =
        records.data() + (task.axis_index * static_cast<std::size_t>(config.graphs_per_setting) +
                          static_cast<std::size_t>(task.graph_index)) *
                             rows_per_task;
    for (std::size_t mi = 0; mi < config.models.size(); ++mi)
      for (idx_t r = 0; r < config.restarts; ++r) {
        BenchRecord& rec = row[mi * static_cast<std::size_t>(config.restarts) + r];
        rec.axis_value = axis_value;
        rec.model = model_kind_name(config.models[mi]);
        rec.graph_seed = graph_seed;
        rec.restart = r;
      }

    Dataset ds;
    Split split;
    try {
      GenParams params = apply_axis_point(config.base, config.axis.kind, point);
      params.seed = graph_seed;
      ds = generate(params);
      split = config.stratified
                  ? stratified_split(ds.labels, config.ratios, mix64(graph_seed, kStreamBenchSplit))
                  : uniform_split(ds.graph.node_count, config.ratios,
                                  mix64(graph_seed, kStreamBenchSplit));
    } catch (const std::exception& e) {
      for (std::size_t i = 0; i < rows_per_task; ++i) {
        row[i].failed = true;
        row[i].note = std::string("generation: ") + e.what();
      }
      return;
    }

    const auto truth_test = [&] {
      std::vector<idx_t> t;
      t.reserve(split.test.size());
      for (idx_t i : split.test) t.push_back(ds.labels.labels[i]);
      return t;
    }();

    for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
      const ModelKind mk = config.models[mi];
      GridSearchResult gs;
      try {
        gs = grid_search(mk, grids.at(mk), ds, split,
                         mix64(graph_seed, kStreamRestart));
      } catch (const std::exception& e) {
        for (idx_t r = 0; r < config.restarts; ++r) {
          auto& rec = row[mi * static_cast<std::size_t>(config.restarts) + r];
          rec.failed = true;
          rec.note = std::string("grid search: ") + e.what();
        }
        continue;
      }
      for (idx_t r = 0; r < config.restarts; ++r) {
        auto& rec = row[mi * static_cast<std::size_t>(config.restarts) + r];
        try {
          ModelSpec spec = gs.best;
          spec.seed = mix64(graph_seed, kStreamRestart + static_cast<std::uint64_t>(r));
          TrainedModel tm = train(spec, ds, split);
          std::vector<idx_t> pred_test;
          {
            Predictions pred = predict(tm, ds);
            pred_test.reserve(split.test.size());
            for (idx_t i : split.test) pred_test.push_back(pred.labels[i]);
          }
          rec.hyperparams = spec.describe();
          rec.f1 = f1_macro(pred_test, truth_test, ds.labels.class_count);
          rec.acc = accuracy(pred_test, truth_test);
          rec.epochs = static_cast<idx_t>(tm.history.size());
          rec.epoch_time_s = config.measure_timing ? mean_epoch_seconds(tm.history) : 0.0;
        } catch (const std::exception& e) {
          rec.failed = true;
          rec.note = std::string("training: ") + e.what();
        }
      }
    }
  };

  int workers = config.workers;
  if (workers == 0)
    workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), tasks.size()));

  if (workers <= 1) {
    for (const Task& t : tasks) run_task(t);
  } else {
    // Kernel-level parallelism off while the task pool is active.
    const int saved = par::threads();
    par::set_threads(1);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          run_task(tasks[i]);
        }
      });
    for (auto& th : pool) th.join();
    par::set_threads(saved);
  }

  BenchReport report;
  report.axis_kind = axis_kind_name(config.axis.kind);
  report.records = std::move(records);

  for (const auto& point : config.axis.values) {
    const std::string axis_value = point.str();
    for (ModelKind mk : config.models) {
      const std::string model = model_kind_name(mk);
      BenchAggregate agg;
      agg.axis_value = axis_value;
      agg.model = model;
      double f1s = 0, f1s2 = 0, accs = 0, accs2 = 0, eps = 0, ts = 0, ts2 = 0;
      for (const auto& rec : report.records) {
        if (rec.failed || rec.axis_value != axis_value || rec.model != model) continue;
        ++agg.count;
        f1s += rec.f1;
        f1s2 += rec.f1 * rec.f1;
        accs += rec.acc;
        accs2 += rec.acc * rec.acc;
        eps += static_cast<double>(rec.epochs);
        ts += rec.epoch_time_s;
        ts2 += rec.epoch_time_s * rec.epoch_time_s;
      }
      if (agg.count > 0) {
        const double c = static_cast<double>(agg.count);
        agg.f1_mean = f1s / c;
        agg.f1_std = std::sqrt(std::max(0.0, f1s2 / c - agg.f1_mean * agg.f1_mean));
        agg.acc_mean = accs / c;
        agg.acc_std = std::sqrt(std::max(0.0, accs2 / c - agg.acc_mean * agg.acc_mean));
        agg.epochs_mean = eps / c;
        agg.epoch_time_mean = ts / c;
        agg.epoch_time_std =
            std::sqrt(std::max(0.0, ts2 / c - agg.epoch_time_mean * agg.epoch_time_mean));
      }
      report.aggregates.push_back(std::move(agg));
    }
  }
  return report;
}

std::string BenchReport::to_csv() const {
  std::string out =
      "axis_kind,axis_value,model,graph_seed,restart_seed,hyperparams,f1_macro,accuracy,"
      "epochs,epoch_time_s,agg,f1_macro_std,accuracy_std,epoch_time_std,note\n";
  for (const auto& r : records) {
    out += axis_kind;
    out += ',' + r.axis_value + ',' + r.model + ',' + std::to_string(r.graph_seed) + ',' +
           std::to_string(r.restart) + ',' + r.hyperparams + ',';
    if (r.failed) {
      out += ",,,";
    } else {
      out += fmt(r.f1) + ',' + fmt(r.acc) + ',' + std::to_string(r.epochs) + ',' +
             fmt(r.epoch_time_s);
    }
    out += ",0,,,,";
    std::string note = r.note;
    for (char& ch : note)
      if (ch == ',' || ch == '\n') ch = ';';
    out += note + '\n';
  }
  for (const auto& a : aggregates) {
    out += axis_kind;
    out += ',' + a.axis_value + ',' + a.model + ",,,,";
    out += fmt(a.f1_mean) + ',' + fmt(a.acc_mean) + ',' + fmt(a.epochs_mean) + ',' +
           fmt(a.epoch_time_mean) + ",1," + fmt(a.f1_std) + ',' + fmt(a.acc_std) + ',' +
           fmt(a.epoch_time_std) + ",\n";
  }
  return out;
}

void BenchReport::write_csv(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error(file.string() + ": cannot open for writing");
  out << to_csv();
  if (!out) throw std::runtime_error(file.string() + ": write failed");
}

void BenchReport::write_plotdata(const std::filesystem::path& directory) const {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec)
    throw std::runtime_error(directory.string() + ": cannot create directory: " + ec.message());
  const struct {
    const char* file;
    double BenchAggregate::* mean;
    double BenchAggregate::* std;
  } sheets[] = {
      {"f1_macro.tsv", &BenchAggregate::f1_mean, &BenchAggregate::f1_std},
      {"accuracy.tsv", &BenchAggregate::acc_mean, &BenchAggregate::acc_std},
      {"epoch_time.tsv", &BenchAggregate::epoch_time_mean, &BenchAggregate::epoch_time_std},
  };
  for (const auto& sheet : sheets) {
    std::ofstream out(directory / sheet.file, std::ios::binary);
    if (!out)
      throw std::runtime_error((directory / sheet.file).string() + ": cannot open");
    out << "x\tmodel\tmean\tstd\n";
    for (const auto& a : aggregates)
      out << a.axis_value << '\t' << a.model << '\t' << fmt(a.*sheet.mean) << '\t'
          << fmt(a.*sheet.std) << '\n';
    if (!out) throw std::runtime_error((directory / sheet.file).string() + ": write failed");
  }
}

const BenchAggregate& BenchReport::aggregate(const std::string& axis_value,
                                             const std::string& model) const {
  for (const auto& a : aggregates)
    if (a.axis_value == axis_value && a.model == model) return a;
  throw std::invalid_argument("no aggregate for (" + axis_value + ", " + model + ")");
}

}  // namespace synbench
