#include "synbench/dataset_io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace synbench {

namespace {

[[noreturn]] void fail(const std::filesystem::path& file, const std::string& what) {
  throw std::runtime_error(file.string() + ": " + what);
}

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) fail(file, "cannot open for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(file, "cannot open (missing file?)");
  return in;
}

idx_t parse_index(std::string_view token, const std::filesystem::path& file,
                  const char* what) {
  idx_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0)
    fail(file, std::string("non-integer ") + what + ": '" + std::string(token) + "'");
  return value;
}

double parse_double(std::string_view token, const std::filesystem::path& file) {
  try {
    std::size_t pos = 0;
    double v = std::stod(std::string(token), &pos);
    if (pos != token.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    fail(file, "bad value: '" + std::string(token) + "'");
  }
}

std::vector<std::string_view> split_tabs(const std::string& line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.emplace_back(line.data() + start, line.size() - start);
      return out;
    }
    out.emplace_back(line.data() + start, tab - start);
    start = tab + 1;
  }
}

std::string format_value(double v, AttrMode mode) {
  char buf[32];
  if (mode == AttrMode::binary) {
    std::snprintf(buf, sizeof buf, "%d", static_cast<int>(v));
  } else {
    std::snprintf(buf, sizeof buf, "%.17g", v);
  }
  return buf;
}

}  // namespace

void save_dataset(const Dataset& dataset, const std::filesystem::path& directory) {
  dataset.validate();
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) fail(directory, "cannot create directory: " + ec.message());

  {
    auto out = open_out(directory / "graph.edges");
    for (auto [u, v] : dataset.graph.edges())
      out << u << '\t' << v << '\n';
    if (!out) fail(directory / "graph.edges", "write failed");
  }
  {
    auto out = open_out(directory / "attrs.tsv");
    const auto& am = dataset.attributes;
    out << "# n=" << am.node_count << " d=" << am.attr_count << " mode="
        << (am.mode == AttrMode::binary ? "binary" : "continuous") << '\n';
    for (idx_t i = 0; i < am.node_count; ++i)
      for (idx_t e = am.values.offsets[i]; e < am.values.offsets[i + 1]; ++e)
        out << i << '\t' << am.values.col_indices[e] << '\t'
            << format_value(am.values.values[e], am.mode) << '\n';
    if (!out) fail(directory / "attrs.tsv", "write failed");
  }
  {
    auto out = open_out(directory / "labels.tsv");
    out << "# k=" << dataset.labels.class_count << '\n';
    for (idx_t i = 0; i < dataset.labels.node_count(); ++i)
      out << i << '\t' << dataset.labels.labels[i] << '\n';
    if (!out) fail(directory / "labels.tsv", "write failed");
  }
  {
    auto out = open_out(directory / "provenance.json");
    out << dataset.provenance_json << '\n';
    if (!out) fail(directory / "provenance.json", "write failed");
  }
}

Dataset load_dataset(const std::filesystem::path& directory) {
  Dataset ds;

  // attrs.tsv first: its header carries n and d.
  idx_t n = -1, d = -1;
  {
    const auto file = directory / "attrs.tsv";
    auto in = open_in(file);
    std::string line;
    if (!std::getline(in, line)) fail(file, "missing header line");
    AttrMode mode = AttrMode::binary;
    char mode_buf[16] = {0};
    if (std::sscanf(line.c_str(), "# n=%" PRId64 " d=%" PRId64 " mode=%15s", &n, &d,
                    mode_buf) != 3)
      fail(file, "bad header: '" + line + "'");
    std::string mode_str = mode_buf;
    if (mode_str == "binary")
      mode = AttrMode::binary;
    else if (mode_str == "continuous")
      mode = AttrMode::continuous;
    else
      fail(file, "unknown attribute mode '" + mode_str + "'");

    std::vector<std::tuple<idx_t, idx_t, double>> triplets;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto tok = split_tabs(line);
      if (tok.size() != 3) fail(file, "expected 3 columns: '" + line + "'");
      idx_t node = parse_index(tok[0], file, "node id");
      idx_t attr = parse_index(tok[1], file, "attribute index");
      double value = parse_double(tok[2], file);
      if (node >= n) fail(file, "node id " + std::to_string(node) + " >= n");
      if (attr >= d) fail(file, "attribute index " + std::to_string(attr) + " >= d");
      triplets.emplace_back(node, attr, value);
    }
    try {
      ds.attributes = AttributeMatrix::from_triplets(n, d, mode, std::move(triplets));
    } catch (const std::invalid_argument& e) {
      fail(file, e.what());
    }
  }

  {
    const auto file = directory / "graph.edges";
    auto in = open_in(file);
    std::string line;
    std::vector<std::pair<idx_t, idx_t>> edges;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto tok = split_tabs(line);
      if (tok.size() != 2) fail(file, "expected 2 columns: '" + line + "'");
      idx_t u = parse_index(tok[0], file, "node id");
      idx_t v = parse_index(tok[1], file, "node id");
      if (u >= n || v >= n) fail(file, "edge endpoint >= n: '" + line + "'");
      edges.emplace_back(u, v);
    }
    idx_t dropped = 0;
    ds.graph = SparseGraph::from_edges(n, std::move(edges), &dropped);
    if (dropped > 0)
      std::cerr << "warning: " << file.string() << ": dropped " << dropped
                << " self-loop(s)\n";
  }

  {
    const auto file = directory / "labels.tsv";
    auto in = open_in(file);
    std::string line;
    if (!std::getline(in, line)) fail(file, "missing header line");
    idx_t k = -1;
    if (std::sscanf(line.c_str(), "# k=%" PRId64, &k) != 1 || k <= 0)
      fail(file, "bad header: '" + line + "'");
    ds.labels.class_count = k;
    ds.labels.labels.assign(static_cast<std::size_t>(n), -1);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto tok = split_tabs(line);
      if (tok.size() != 2) fail(file, "expected 2 columns: '" + line + "'");
      idx_t node = parse_index(tok[0], file, "node id");
      idx_t label = parse_index(tok[1], file, "label");
      if (node >= n) fail(file, "node id " + std::to_string(node) + " >= n");
      if (label >= k)
        fail(file, "label " + std::to_string(label) + " out of range [0, " +
                       std::to_string(k) + ")");
      ds.labels.labels[node] = label;
    }
    for (idx_t i = 0; i < n; ++i)
      if (ds.labels.labels[i] < 0)
        fail(file, "node " + std::to_string(i) + " has no label");
  }

  {
    const auto file = directory / "provenance.json";
    auto in = open_in(file);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    ds.provenance_json = text;
  }

  try {
    ds.validate();
  } catch (const std::invalid_argument& e) {
    fail(directory, e.what());
  }
  return ds;
}

}  // namespace synbench
