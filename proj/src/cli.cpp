#include "synbench/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "synbench/apportion.hpp"
#include "synbench/dataset_io.hpp"
#include "synbench/features.hpp"
#include "synbench/harness.hpp"
#include "synbench/presets.hpp"

namespace synbench {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open (missing file?)");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << text;
  if (!out) throw std::runtime_error(path + ": write failed");
}

void print_effective_config(const std::string& command, const json& cfg) {
  std::cerr << "[synbench] " << command << " effective config: " << cfg.dump() << "\n";
}

void reject_unknown_keys(const json& obj, const std::vector<std::string>& known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& k : known)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
  }
}

AxisPoint parse_axis_value(const json& v, AxisKind kind) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "balanced" && kind == AxisKind::class_size) return AxisPoint::balanced();
    if (s == "uniform" && kind == AxisKind::attribute) return AxisPoint::uniform();
    throw std::invalid_argument("axis value '" + s + "' not valid for axis kind " +
                                axis_kind_name(kind));
  }
  if (v.is_array()) {
    if (v.size() != 2 || kind != AxisKind::graph_size)
      throw std::invalid_argument("pair axis values belong to the graph_size axis");
    return AxisPoint::pair(v[0].get<idx_t>(), v[1].get<idx_t>());
  }
  return AxisPoint::number(v.get<double>());
}

HyperGrid parse_grid(const json& j, ModelKind kind, const std::string& where) {
  reject_unknown_keys(j,
                      {"weight_decay", "learning_rate", "patience", "hidden", "dropout",
                       "propagation_steps", "max_epochs"},
                      where);
  HyperGrid g = HyperGrid::defaults(kind);
  if (j.contains("weight_decay")) g.weight_decay = j["weight_decay"].get<std::vector<double>>();
  if (j.contains("learning_rate")) g.learning_rate = j["learning_rate"].get<std::vector<double>>();
  if (j.contains("patience")) g.patience = j["patience"].get<std::vector<idx_t>>();
  if (j.contains("hidden")) g.hidden = j["hidden"].get<std::vector<idx_t>>();
  if (j.contains("dropout")) g.dropout = j["dropout"].get<std::vector<double>>();
  if (j.contains("propagation_steps"))
    g.propagation_steps = j["propagation_steps"].get<std::vector<idx_t>>();
  if (j.contains("max_epochs")) g.max_epochs = j["max_epochs"].get<idx_t>();
  return g;
}

BenchConfig parse_bench_config(const std::string& text) {
  json j = json::parse(text);
  reject_unknown_keys(j,
                      {"schema_version", "preset", "params", "nodes", "edges", "axis",
                       "models", "protocol", "grids", "workers", "out"},
                      "bench config");
  if (j.contains("schema_version") && j["schema_version"].get<int>() != 1)
    throw std::invalid_argument("bench config: unsupported schema_version");

  BenchConfig cfg;
  if (j.contains("params")) {
    cfg.base = GenParams::from_json(j["params"].dump());
  } else {
    cfg.base = preset_params(j.value("preset", std::string("cora-like")));
  }
  if (j.contains("nodes")) cfg.base.node_count = j["nodes"].get<idx_t>();
  if (j.contains("edges")) cfg.base.target_edge_count = j["edges"].get<idx_t>();

  if (!j.contains("axis")) throw std::invalid_argument("bench config: missing 'axis'");
  reject_unknown_keys(j["axis"], {"kind", "values"}, "bench config axis");
  cfg.axis.kind = axis_kind_from_name(j["axis"].at("kind").get<std::string>());
  for (const auto& v : j["axis"].at("values"))
    cfg.axis.values.push_back(parse_axis_value(v, cfg.axis.kind));

  if (!j.contains("models")) throw std::invalid_argument("bench config: missing 'models'");
  for (const auto& m : j["models"])
    cfg.models.push_back(model_kind_from_name(m.get<std::string>()));

  if (j.contains("protocol")) {
    const json& p = j["protocol"];
    reject_unknown_keys(p,
                        {"ratios", "graphs_per_setting", "restarts", "master_seed", "split",
                         "measure_timing"},
                        "bench config protocol");
    if (p.contains("ratios")) {
      auto r = p["ratios"].get<std::vector<double>>();
      if (r.size() != 3)
        throw std::invalid_argument("bench config: ratios must have 3 entries");
      cfg.ratios = {r[0], r[1], r[2]};
    }
    if (p.contains("graphs_per_setting"))
      cfg.graphs_per_setting = p["graphs_per_setting"].get<idx_t>();
    if (p.contains("restarts")) cfg.restarts = p["restarts"].get<idx_t>();
    if (p.contains("master_seed")) cfg.master_seed = p["master_seed"].get<std::uint64_t>();
    if (p.contains("split")) {
      const std::string s = p["split"].get<std::string>();
      if (s == "stratified")
        cfg.stratified = true;
      else if (s == "uniform")
        cfg.stratified = false;
      else
        throw std::invalid_argument("bench config: split must be 'stratified' or 'uniform'");
    }
    if (p.contains("measure_timing")) cfg.measure_timing = p["measure_timing"].get<bool>();
  }
  if (j.contains("grids")) {
    for (auto it = j["grids"].begin(); it != j["grids"].end(); ++it) {
      const ModelKind mk = model_kind_from_name(it.key());
      cfg.grids.emplace(mk, parse_grid(it.value(), mk, "bench config grid '" + it.key() + "'"));
    }
  }
  if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
  return cfg;
}

json bench_config_to_json(const BenchConfig& cfg, const std::string& out_dir) {
  json j;
  j["schema_version"] = 1;
  j["nodes"] = cfg.base.node_count;
  j["edges"] = cfg.base.target_edge_count;
  j["axis"]["kind"] = axis_kind_name(cfg.axis.kind);
  json vals = json::array();
  for (const auto& v : cfg.axis.values) vals.push_back(v.str());
  j["axis"]["values"] = std::move(vals);
  json models = json::array();
  for (ModelKind mk : cfg.models) models.push_back(model_kind_name(mk));
  j["models"] = std::move(models);
  j["protocol"] = {{"ratios", cfg.ratios},
                   {"graphs_per_setting", cfg.graphs_per_setting},
                   {"restarts", cfg.restarts},
                   {"master_seed", cfg.master_seed},
                   {"split", cfg.stratified ? "stratified" : "uniform"},
                   {"measure_timing", cfg.measure_timing}};
  j["workers"] = cfg.workers;
  j["out"] = out_dir;
  return j;
}

struct GenerateArgs {
  std::string preset = "cora-like";
  std::string config_file;
  std::uint64_t seed = 0;
  std::string alpha;  // number or "balanced"
  double beta = -1.0;
  std::string gamma;  // number or "uniform"
  idx_t nodes = -1, edges = -1, attrs = -1, classes = -1;
  std::string degree_model, attr_model;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  GenParams params =
      a.config_file.empty() ? preset_params(a.preset) : GenParams::from_json(slurp(a.config_file));
  params.seed = a.seed;
  if (a.nodes >= 0) params.node_count = a.nodes;
  if (a.edges >= 0) params.target_edge_count = a.edges;
  if (a.attrs >= 0 && a.attrs != params.attr_count)
    throw std::invalid_argument(
        "--attrs must match the preset/config attribute count (" +
        std::to_string(params.attr_count) + "); supply a --config with matching matrices");
  if (a.classes >= 0 && a.classes != params.class_count)
    throw std::invalid_argument(
        "--classes must match the preset/config class count (" +
        std::to_string(params.class_count) + "); supply a --config with matching matrices");
  if (!a.degree_model.empty()) {
    if (a.degree_model == "powerlaw")
      params.degree_model = DegreeModel::powerlaw;
    else if (a.degree_model == "uniform")
      params.degree_model = DegreeModel::uniform;
    else
      throw std::invalid_argument("--degree-model must be powerlaw or uniform");
  }
  if (!a.attr_model.empty()) {
    if (a.attr_model == "bernoulli")
      params.attr_model = AttrModel::bernoulli;
    else if (a.attr_model == "gaussian")
      params.attr_model = AttrModel::gaussian;
    else
      throw std::invalid_argument("--attr-model must be bernoulli or gaussian");
  }
  if (!a.alpha.empty()) {
    params.class_fractions = a.alpha == "balanced"
                                 ? balanced_class_sizes(params.class_count)
                                 : configure_class_sizes(std::stod(a.alpha), params.class_count);
  }
  if (a.beta >= 0.0)
    params.preference_mean = configure_preference_mean(params.preference_mean, a.beta);
  if (!a.gamma.empty()) {
    params.attr_correlation = a.gamma == "uniform"
                                  ? uniform_attr_correlation(params.attr_correlation)
                                  : mix_attr_correlation(params.attr_correlation,
                                                         std::stod(a.gamma));
  }
  params.validate();

  json cfg = json::parse(params.to_json());
  cfg["out"] = a.out;
  print_effective_config("generate", cfg);

  Dataset ds = generate(params);
  save_dataset(ds, a.out);
  std::cout << "wrote dataset (" << ds.graph.node_count << " nodes, " << ds.graph.edge_count
            << " edges) to " << a.out << "\n";
  return 0;
}

int cmd_extract(const std::string& dir, const std::string& out) {
  json cfg = {{"dataset", dir}, {"out", out}};
  print_effective_config("extract", cfg);
  Dataset ds = load_dataset(dir);
  ClassFeatures cf = extract_class_features(ds);
  GraphFeatures gf = extract_graph_features(ds);
  spit(out, features_to_json(cf, gf));
  std::cout << "wrote features (n=" << gf.node_count << " m=" << gf.edge_count
            << " d=" << gf.attr_count << " k=" << gf.class_count << ") to " << out << "\n";
  return 0;
}

int cmd_transform(const std::string& in_file, const std::string& alpha, double beta,
                  const std::string& gamma, const std::string& out) {
  json cfg = {{"input", in_file}, {"out", out}};
  if (!alpha.empty()) cfg["alpha"] = alpha;
  if (beta >= 0.0) cfg["beta"] = beta;
  if (!gamma.empty()) cfg["gamma"] = gamma;
  print_effective_config("transform", cfg);

  ClassFeatures cf;
  GraphFeatures gf;
  features_from_json(slurp(in_file), cf, gf);
  if (!alpha.empty()) {
    cf.size_fractions = alpha == "balanced"
                            ? balanced_class_sizes(gf.class_count)
                            : configure_class_sizes(std::stod(alpha), gf.class_count);
    cf.sizes = largest_remainder_apportion(cf.size_fractions, gf.node_count);
  }
  if (beta >= 0.0) cf.preference_mean = configure_preference_mean(cf.preference_mean, beta);
  if (!gamma.empty()) {
    cf.attr_correlation = gamma == "uniform"
                              ? uniform_attr_correlation(cf.attr_correlation)
                              : mix_attr_correlation(cf.attr_correlation, std::stod(gamma));
  }
  spit(out, features_to_json(cf, gf));
  std::cout << "wrote transformed features to " << out << "\n";
  return 0;
}

int cmd_bench(const std::string& config_file, int workers_override,
              const std::string& out_override) {
  BenchConfig cfg = parse_bench_config(slurp(config_file));
  json raw = json::parse(slurp(config_file));
  std::string out_dir = raw.value("out", std::string("bench_out"));
  if (!out_override.empty()) out_dir = out_override;
  if (workers_override >= 0) cfg.workers = workers_override;
  cfg.validate();
  print_effective_config("bench", bench_config_to_json(cfg, out_dir));

  BenchReport report = run_benchmark(cfg);
  std::filesystem::create_directories(out_dir);
  report.write_csv(std::filesystem::path(out_dir) / "report.csv");
  report.write_plotdata(std::filesystem::path(out_dir) / "plotdata");
  idx_t failed = 0;
  for (const auto& r : report.records) failed += r.failed ? 1 : 0;
  std::cout << "wrote " << report.records.size() << " records (" << failed
            << " failed) and " << report.aggregates.size() << " aggregates to " << out_dir
            << "\n";
  return 0;
}

int cmd_report(const std::string& csv_file) {
  json cfg = {{"input", csv_file}};
  print_effective_config("report", cfg);
  std::ifstream in(csv_file, std::ios::binary);
  if (!in) throw std::runtime_error(csv_file + ": cannot open (missing file?)");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(csv_file + ": empty file");
  std::printf("%-12s %-12s %-6s %-6s %-17s %-17s %-8s %s\n", "axis_kind", "axis_value",
              "model", "runs", "f1_macro", "accuracy", "epochs", "epoch_time_s");
  bool any = false;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true) {
      std::size_t pos = line.find(',', start);
      if (pos == std::string::npos) {
        f.push_back(line.substr(start));
        break;
      }
      f.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    if (f.size() < 14 || f[10] != "1") continue;
    any = true;
    std::printf("%-12s %-12s %-6s %-6s %7s \xc2\xb1 %-7s %7s \xc2\xb1 %-7s %-8s %s\n",
                f[0].c_str(), f[1].c_str(), f[2].c_str(), "-", f[6].c_str(), f[11].c_str(),
                f[7].c_str(), f[12].c_str(), f[8].c_str(), f[9].c_str());
  }
  if (!any) std::cout << "(no aggregate rows found)\n";
  return 0;
}

int cmd_gradcheck() {
  json cfg = {{"instances", "builtin 10-node toys"}, {"step", 1e-5}};
  print_effective_config("gradcheck", cfg);

  GenParams p;
  p.class_fractions = {0.4, 0.3, 0.3};
  p.class_count = 3;
  p.node_count = 10;
  p.target_edge_count = 14;
  p.attr_count = 6;
  p.preference_mean = DenseMatrix(3, 3, 0.2);
  for (idx_t c = 0; c < 3; ++c) p.preference_mean.at(c, c) = 0.6;
  p.attr_correlation = DenseMatrix(6, 3, 0.15);
  for (idx_t a = 0; a < 6; ++a) p.attr_correlation.at(a, a % 3) = 0.7;
  p.degree_model = DegreeModel::uniform;
  p.seed = 12345;
  Dataset ds = generate(p);
  Split split;
  for (idx_t i = 0; i < ds.graph.node_count; ++i) split.train.push_back(i);

  bool ok = true;
  for (auto [kind, bound] : {std::pair{ModelKind::mlp, 1e-4},
                             std::pair{ModelKind::gcn, 1e-4},
                             std::pair{ModelKind::sgc, 1e-6}}) {
    ModelSpec spec;
    spec.kind = kind;
    spec.hidden_size = 5;
    spec.weight_decay = 5e-4;
    spec.seed = 7;
    const double err = gradient_check(spec, ds, split);
    const bool pass = err <= bound;
    ok = ok && pass;
    std::printf("%s: max relative gradient error %.3e (bound %.0e) %s\n",
                model_kind_name(kind), err, bound, pass ? "PASS" : "FAIL");
  }
  return ok ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"synthetic attributed-graph generation and node-classification benchmarking"};
  app.require_subcommand(1);

  // generate
  GenerateArgs gen;
  auto* sc_gen = app.add_subcommand("generate", "generate a dataset directory");
  sc_gen->add_option("--preset", gen.preset, "parameter preset (cora-like)");
  sc_gen->add_option("--config", gen.config_file, "GenParams JSON file");
  sc_gen->add_option("--seed", gen.seed, "generation seed");
  sc_gen->add_option("--alpha", gen.alpha, "class-size alpha in (0,1) or 'balanced'");
  sc_gen->add_option("--beta", gen.beta, "homophily/heterophily beta >= 0");
  sc_gen->add_option("--gamma", gen.gamma, "attribute mixing gamma >= 0 or 'uniform'");
  sc_gen->add_option("--nodes", gen.nodes, "node count override");
  sc_gen->add_option("--edges", gen.edges, "target edge count override");
  sc_gen->add_option("--attrs", gen.attrs, "attribute count (must match preset/config)");
  sc_gen->add_option("--classes", gen.classes, "class count (must match preset/config)");
  sc_gen->add_option("--degree-model", gen.degree_model, "powerlaw | uniform");
  sc_gen->add_option("--attr-model", gen.attr_model, "bernoulli | gaussian");
  sc_gen->add_option("--out", gen.out, "output dataset directory")->required();

  // extract
  std::string ex_dir, ex_out;
  auto* sc_ex = app.add_subcommand("extract", "extract features.json from a dataset");
  sc_ex->add_option("dataset", ex_dir, "dataset directory")->required();
  sc_ex->add_option("--out", ex_out, "output file (default <dataset>/features.json)");

  // transform
  std::string tr_in, tr_alpha, tr_gamma, tr_out;
  double tr_beta = -1.0;
  auto* sc_tr = app.add_subcommand("transform", "apply alpha/beta/gamma to features.json");
  sc_tr->add_option("features", tr_in, "input features.json")->required();
  sc_tr->add_option("--alpha", tr_alpha, "class-size alpha in (0,1) or 'balanced'");
  sc_tr->add_option("--beta", tr_beta, "homophily/heterophily beta >= 0");
  sc_tr->add_option("--gamma", tr_gamma, "attribute mixing gamma >= 0 or 'uniform'");
  sc_tr->add_option("--out", tr_out, "output file")->required();

  // bench
  std::string be_config, be_out;
  int be_workers = -1;
  auto* sc_be = app.add_subcommand("bench", "run a benchmark sweep");
  sc_be->add_option("--config", be_config, "bench config JSON")->required();
  sc_be->add_option("--workers", be_workers, "worker count (0 = all cores)");
  sc_be->add_option("--out", be_out, "output directory override");

  // report
  std::string re_csv;
  auto* sc_re = app.add_subcommand("report", "print the aggregate table of a report.csv");
  sc_re->add_option("report", re_csv, "report.csv path")->required();

  // gradcheck
  auto* sc_gc = app.add_subcommand("gradcheck", "finite-difference gradient checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (sc_gen->parsed()) return cmd_generate(gen);
    if (sc_ex->parsed())
      return cmd_extract(ex_dir,
                         ex_out.empty() ? (std::filesystem::path(ex_dir) / "features.json").string()
                                        : ex_out);
    if (sc_tr->parsed()) return cmd_transform(tr_in, tr_alpha, tr_beta, tr_gamma, tr_out);
    if (sc_be->parsed()) return cmd_bench(be_config, be_workers, be_out);
    if (sc_re->parsed()) return cmd_report(re_csv);
    if (sc_gc->parsed()) return cmd_gradcheck();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace synbench
