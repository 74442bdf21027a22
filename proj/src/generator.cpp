#include "synbench/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "synbench/apportion.hpp"
#include "synbench/par.hpp"
#include "synbench/rng.hpp"

namespace synbench {

namespace {

// Stream tags so the sub-steps of one generate() call never share draws.
constexpr std::uint64_t kStreamLabels = 0x4c41424c;
constexpr std::uint64_t kStreamDegrees = 0x44454752;
constexpr std::uint64_t kStreamTopology = 0x544f504f;
constexpr std::uint64_t kStreamAttrs = 0x41545452;
constexpr std::uint64_t kStreamSbm = 0x53424d00;

void check_row_stochastic(const DenseMatrix& m, const char* name) {
  for (idx_t r = 0; r < m.rows; ++r) {
    double sum = 0.0;
    for (idx_t c = 0; c < m.cols; ++c) {
      const double v = m.at(r, c);
      if (v < 0.0 || v > 1.0)
        throw std::invalid_argument(std::string(name) + " entries must lie in [0, 1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument(std::string(name) + " row " + std::to_string(r) +
                                  " sums to " + std::to_string(sum) + ", expected 1");
  }
}

}  // namespace

void GenParams::validate() const {
  if (class_count < 1) throw std::invalid_argument("class_count must be >= 1");
  if (node_count < class_count)
    throw std::invalid_argument("node_count must be >= class_count");
  if (target_edge_count < 1) throw std::invalid_argument("target_edge_count must be >= 1");
  if (attr_count < 1) throw std::invalid_argument("attr_count must be >= 1");
  if (static_cast<idx_t>(class_fractions.size()) != class_count)
    throw std::invalid_argument("class_fractions length must equal class_count");
  double sum = 0.0;
  for (double f : class_fractions) {
    if (!(f > 0.0)) throw std::invalid_argument("class fractions must be positive");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("class fractions must sum to 1");
  if (preference_mean.rows != class_count || preference_mean.cols != class_count)
    throw std::invalid_argument("preference_mean must be class_count x class_count");
  check_row_stochastic(preference_mean, "preference_mean");
  if (attr_correlation.rows != attr_count || attr_correlation.cols != class_count)
    throw std::invalid_argument("attr_correlation must be attr_count x class_count");
  if (attr_model == AttrModel::bernoulli) {
    for (double v : attr_correlation.data)
      if (v < 0.0 || v > 1.0)
        throw std::invalid_argument("bernoulli attr_correlation entries must lie in [0, 1]");
  }
  if (degree_model == DegreeModel::powerlaw && !(powerlaw_exponent > 1.0))
    throw std::invalid_argument("powerlaw exponent must be > 1");
  if (gaussian_sigma < 0.0) throw std::invalid_argument("gaussian sigma must be >= 0");
}

LabelVector assign_labels(const std::vector<double>& fractions, idx_t n,
                          std::uint64_t seed) {
  const idx_t k = static_cast<idx_t>(fractions.size());
  if (n < k) throw std::invalid_argument("need at least one node per class");
  auto counts = largest_remainder_apportion(fractions, n);
  // Apportionment can zero out a tiny class; repair from the largest class so
  // the every-class-non-empty guarantee holds.
  for (idx_t c = 0; c < k; ++c) {
    while (counts[c] == 0) {
      auto mx = std::max_element(counts.begin(), counts.end());
      if (*mx <= 1) throw std::invalid_argument("cannot make every class non-empty");
      --*mx;
      ++counts[c];
    }
  }
  LabelVector lv;
  lv.class_count = k;
  lv.labels.reserve(static_cast<std::size_t>(n));
  for (idx_t c = 0; c < k; ++c)
    lv.labels.insert(lv.labels.end(), static_cast<std::size_t>(counts[c]), c);
  Rng rng(seed, kStreamLabels);
  rng.shuffle(lv.labels);
  return lv;
}

std::vector<double> sample_degrees(idx_t n, idx_t m, DegreeModel model,
                                   double exponent, std::uint64_t seed) {
  std::vector<double> deg(static_cast<std::size_t>(n));
  if (model == DegreeModel::uniform) {
    std::fill(deg.begin(), deg.end(), 2.0 * static_cast<double>(m) / static_cast<double>(n));
    return deg;
  }
  // Inverse-CDF draw from a power law with density ~ x^-a on [1, n-1].
  const double a = exponent;
  const double xmax = std::max(2.0, static_cast<double>(n - 1));
  const double tail = 1.0 - std::pow(xmax, 1.0 - a);
  Rng rng(seed, kStreamDegrees);
  double sum = 0.0;
  for (double& d : deg) {
    const double u = rng.uniform01();
    d = std::pow(1.0 - u * tail, 1.0 / (1.0 - a));
    sum += d;
  }
  const double scale = 2.0 * static_cast<double>(m) / sum;
  for (double& d : deg) d *= scale;
  return deg;
}

namespace {

// Poisson collision model for the proposal budget. With budget scale s, the
// proposal count on unordered pair (i, j) is approximately Poisson with rate
// s * theta_i * theta_j * coef(c_i, c_j), so the pair realizes an edge with
// probability 1 - exp(-rate). Degrees are grouped per class into the exact
// top nodes plus equal-count buckets of the rest, and s is solved by
// bisection so the expected realized edge count hits the target.
struct ClassBuckets {
  std::vector<double> count;  // nodes per bucket
  std::vector<double> mean;   // mean expected degree per bucket
};

double expected_realized_edges(double s, const std::vector<ClassBuckets>& reps,
                               const DenseMatrix& m_pref,
                               const std::vector<double>& class_weight) {
  const idx_t k = m_pref.rows;
  double total = 0.0;
  for (idx_t c1 = 0; c1 < k; ++c1) {
    const auto& r1 = reps[c1];
    for (idx_t c2 = c1; c2 < k; ++c2) {
      const auto& r2 = reps[c2];
      if (class_weight[c1] <= 0.0 || class_weight[c2] <= 0.0) continue;
      const double coef = 0.5 * (m_pref.at(c1, c2) / class_weight[c2] +
                                 m_pref.at(c2, c1) / class_weight[c1]);
      if (coef <= 0.0) continue;
      double block = 0.0, diag = 0.0;
      for (std::size_t b1 = 0; b1 < r1.count.size(); ++b1) {
        for (std::size_t b2 = 0; b2 < r2.count.size(); ++b2) {
          const double lam = s * coef * r1.mean[b1] * r2.mean[b2];
          const double p = -std::expm1(-lam);
          block += r1.count[b1] * r2.count[b2] * p;
          if (c1 == c2 && b1 == b2) diag += r1.count[b1] * p;
        }
      }
      total += c1 == c2 ? (block - diag) / 2.0 : block;
    }
  }
  return total;
}

std::vector<ClassBuckets> bucket_degrees(const LabelVector& labels,
                                         const std::vector<double>& degrees) {
  constexpr idx_t kExactTop = 64;
  constexpr idx_t kBuckets = 96;
  const idx_t k = labels.class_count;
  std::vector<std::vector<double>> per_class(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < degrees.size(); ++i)
    per_class[labels.labels[i]].push_back(degrees[i]);
  std::vector<ClassBuckets> reps(static_cast<std::size_t>(k));
  for (idx_t c = 0; c < k; ++c) {
    auto& th = per_class[c];
    std::sort(th.begin(), th.end());
    const idx_t sz = static_cast<idx_t>(th.size());
    const idx_t top = std::min(kExactTop, sz);
    const idx_t rest = sz - top;
    auto& rep = reps[c];
    const idx_t nb = std::min(kBuckets, rest);
    for (idx_t b = 0; b < nb; ++b) {
      const idx_t lo = rest * b / nb, hi = rest * (b + 1) / nb;
      if (hi == lo) continue;
      double s = 0.0;
      for (idx_t i = lo; i < hi; ++i) s += th[i];
      rep.count.push_back(static_cast<double>(hi - lo));
      rep.mean.push_back(s / static_cast<double>(hi - lo));
    }
    for (idx_t i = rest; i < sz; ++i) {
      rep.count.push_back(1.0);
      rep.mean.push_back(th[i]);
    }
  }
  return reps;
}

}  // namespace

SparseGraph generate_topology(const LabelVector& labels, const DenseMatrix& m_pref,
                              const std::vector<double>& degrees, std::uint64_t seed) {
  const idx_t n = labels.node_count();
  const idx_t k = labels.class_count;
  if (static_cast<idx_t>(degrees.size()) != n)
    throw std::invalid_argument("degree array length must equal node count");
  if (m_pref.rows != k || m_pref.cols != k)
    throw std::invalid_argument("preference mean must be k x k");
  const double deg_sum = std::accumulate(degrees.begin(), degrees.end(), 0.0);
  const idx_t m_target = static_cast<idx_t>(std::llround(deg_sum / 2.0));
  if (m_target < 1) throw std::invalid_argument("degrees must sum to at least 2");

  // Per-class node lists and cumulative expected-degree weights for
  // inverse-CDF target sampling.
  std::vector<std::vector<idx_t>> class_nodes(static_cast<std::size_t>(k));
  for (idx_t i = 0; i < n; ++i) class_nodes[labels.labels[i]].push_back(i);
  std::vector<std::vector<double>> class_cumw(static_cast<std::size_t>(k));
  std::vector<double> class_weight(static_cast<std::size_t>(k), 0.0);
  for (idx_t c = 0; c < k; ++c) {
    double run = 0.0;
    class_cumw[c].reserve(class_nodes[c].size());
    for (idx_t i : class_nodes[c]) {
      if (degrees[i] < 0.0) throw std::invalid_argument("expected degrees must be >= 0");
      run += degrees[i];
      class_cumw[c].push_back(run);
    }
    class_weight[c] = run;
  }
  for (idx_t c1 = 0; c1 < k; ++c1) {
    if (class_nodes[c1].empty()) continue;
    for (idx_t c2 = 0; c2 < k; ++c2)
      if (m_pref.at(c1, c2) > 0.0 && class_weight[c2] <= 0.0)
        throw std::invalid_argument("class " + std::to_string(c2) +
                                    " has zero total expected degree but receives proposals");
  }

  // Budget scale: expected post-dedup edges == m_target.
  auto reps = bucket_degrees(labels, degrees);
  double lo = 0.0, hi = 8.0;
  if (expected_realized_edges(hi, reps, m_pref, class_weight) <
      static_cast<double>(m_target)) {
    lo = hi;  // requested density not reachable; provenance records the shortfall
  } else {
    for (int it = 0; it < 64; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (expected_realized_edges(mid, reps, m_pref, class_weight) <
          static_cast<double>(m_target))
        lo = mid;
      else
        hi = mid;
    }
  }
  const double budget_scale = 0.5 * (lo + hi);

  const idx_t total_proposals =
      std::max<idx_t>(1, static_cast<idx_t>(std::llround(budget_scale * 0.5 * deg_sum)));
  auto budgets = largest_remainder_apportion(degrees, total_proposals);

  std::vector<idx_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  for (idx_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + budgets[i];

  // Row-major cumulative M for target-class draws.
  DenseMatrix m_cum = m_pref;
  for (idx_t r = 0; r < k; ++r)
    for (idx_t c = 1; c < k; ++c) m_cum.at(r, c) += m_cum.at(r, c - 1);

  constexpr idx_t kNoEdge = -1;
  std::vector<std::pair<idx_t, idx_t>> proposals(
      static_cast<std::size_t>(total_proposals), {kNoEdge, kNoEdge});

  // Per-node streams keyed by (seed, node) make the fill schedule-independent.
  const int nt = par::threads();
#pragma omp parallel for num_threads(nt) if (nt > 1 && n > 256) schedule(dynamic, 64)
  for (idx_t i = 0; i < n; ++i) {
    if (budgets[i] == 0) continue;
    Rng rng(mix64(seed, kStreamTopology), static_cast<std::uint64_t>(i));
    const idx_t ci = labels.labels[i];
    for (idx_t p = 0; p < budgets[i]; ++p) {
      const double uc = rng.uniform01();
      idx_t tc = 0;
      while (tc + 1 < k && uc >= m_cum.at(ci, tc)) ++tc;
      const auto& cum = class_cumw[tc];
      const double ut = rng.uniform01() * class_weight[tc];
      const auto it = std::upper_bound(cum.begin(), cum.end(), ut);
      idx_t pos = static_cast<idx_t>(it - cum.begin());
      if (pos >= static_cast<idx_t>(cum.size())) pos = static_cast<idx_t>(cum.size()) - 1;
      const idx_t j = class_nodes[tc][pos];
      if (j == i) continue;  // self-loop proposal dropped
      proposals[static_cast<std::size_t>(offsets[i] + p)] = {std::min(i, j), std::max(i, j)};
    }
  }

  std::erase_if(proposals, [](const auto& e) { return e.first == kNoEdge; });
  return SparseGraph::from_edges(n, std::move(proposals));
}

AttributeMatrix generate_attributes(const LabelVector& labels, const DenseMatrix& h,
                                    idx_t attr_count, AttrModel model, double sigma,
                                    std::uint64_t seed) {
  const idx_t n = labels.node_count();
  if (h.rows != attr_count || h.cols != labels.class_count)
    throw std::invalid_argument("attr_correlation must be attr_count x class_count");
  AttributeMatrix am;
  am.node_count = n;
  am.attr_count = attr_count;
  am.values.rows = n;
  am.values.cols = attr_count;
  am.values.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  const int nt = par::threads();

  if (model == AttrModel::bernoulli) {
    for (double v : h.data)
      if (v < 0.0 || v > 1.0)
        throw std::invalid_argument("bernoulli attr_correlation entries must lie in [0, 1]");
    // Pass 1 counts each node's hits, pass 2 replays the identical stream to
    // fill the CSR arrays.
    std::vector<idx_t> counts(static_cast<std::size_t>(n), 0);
#pragma omp parallel for num_threads(nt) if (nt > 1 && n > 64) schedule(static)
    for (idx_t i = 0; i < n; ++i) {
      Rng rng(mix64(seed, kStreamAttrs), static_cast<std::uint64_t>(i));
      const idx_t c = labels.labels[i];
      idx_t cnt = 0;
      for (idx_t a = 0; a < attr_count; ++a)
        if (rng.uniform01() < h.at(a, c)) ++cnt;
      counts[i] = cnt;
    }
    for (idx_t i = 0; i < n; ++i) am.values.offsets[i + 1] = am.values.offsets[i] + counts[i];
    am.values.col_indices.resize(static_cast<std::size_t>(am.values.offsets[n]));
    am.values.values.assign(static_cast<std::size_t>(am.values.offsets[n]), 1.0);
#pragma omp parallel for num_threads(nt) if (nt > 1 && n > 64) schedule(static)
    for (idx_t i = 0; i < n; ++i) {
      Rng rng(mix64(seed, kStreamAttrs), static_cast<std::uint64_t>(i));
      const idx_t c = labels.labels[i];
      idx_t e = am.values.offsets[i];
      for (idx_t a = 0; a < attr_count; ++a)
        if (rng.uniform01() < h.at(a, c)) am.values.col_indices[e++] = a;
    }
    am.mode = AttrMode::binary;
    return am;
  }

  // Gaussian mode: dense in effect, stored as CSR with every entry present.
  am.mode = AttrMode::continuous;
  for (idx_t i = 0; i < n; ++i) am.values.offsets[i + 1] = (i + 1) * attr_count;
  am.values.col_indices.resize(static_cast<std::size_t>(n * attr_count));
  am.values.values.resize(static_cast<std::size_t>(n * attr_count));
#pragma omp parallel for num_threads(nt) if (nt > 1 && n > 64) schedule(static)
  for (idx_t i = 0; i < n; ++i) {
    Rng rng(mix64(seed, kStreamAttrs), static_cast<std::uint64_t>(i));
    const idx_t c = labels.labels[i];
    for (idx_t a = 0; a < attr_count; ++a) {
      am.values.col_indices[static_cast<std::size_t>(i * attr_count + a)] = a;
      am.values.values[static_cast<std::size_t>(i * attr_count + a)] =
          h.at(a, c) + sigma * rng.normal();
    }
  }
  return am;
}

Dataset generate(const GenParams& params) {
  params.validate();
  Dataset ds;
  ds.labels = assign_labels(params.class_fractions, params.node_count, params.seed);
  auto degrees = sample_degrees(params.node_count, params.target_edge_count,
                                params.degree_model, params.powerlaw_exponent,
                                params.seed);
  ds.graph = generate_topology(ds.labels, params.preference_mean, degrees, params.seed);
  ds.attributes =
      generate_attributes(ds.labels, params.attr_correlation, params.attr_count,
                          params.attr_model, params.gaussian_sigma, params.seed);
  nlohmann::json prov;
  prov["tool"] = "synbench";
  prov["version"] = "0.1.0";
  prov["params"] = nlohmann::json::parse(params.to_json());
  prov["requested_edges"] = params.target_edge_count;
  prov["realized_edges"] = ds.graph.edge_count;
  ds.provenance_json = prov.dump(2);
  ds.validate();
  return ds;
}

SparseGraph sbm_generate(const DenseMatrix& block_probabilities,
                         const std::vector<idx_t>& class_counts, std::uint64_t seed) {
  const idx_t k = static_cast<idx_t>(class_counts.size());
  if (block_probabilities.rows != k || block_probabilities.cols != k)
    throw std::invalid_argument("block probability matrix must be k x k");
  for (idx_t r = 0; r < k; ++r)
    for (idx_t c = 0; c < k; ++c) {
      const double p = block_probabilities.at(r, c);
      if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("block probabilities must lie in [0, 1]");
      if (p != block_probabilities.at(c, r))
        throw std::invalid_argument("block probability matrix must be symmetric");
    }
  idx_t n = 0;
  for (idx_t c : class_counts) {
    if (c <= 0) throw std::invalid_argument("class counts must be positive");
    n += c;
  }
  std::vector<idx_t> block_of(static_cast<std::size_t>(n));
  std::vector<idx_t> block_end(static_cast<std::size_t>(k));
  {
    idx_t at = 0;
    for (idx_t c = 0; c < k; ++c) {
      std::fill(block_of.begin() + at, block_of.begin() + at + class_counts[c], c);
      at += class_counts[c];
      block_end[c] = at;
    }
  }

  // Per-row streams; geometric gap sampling keeps sparse blocks cheap while
  // producing exactly independent Bernoulli edges.
  std::vector<std::vector<idx_t>> row_edges(static_cast<std::size_t>(n));
  const int nt = par::threads();
#pragma omp parallel for num_threads(nt) if (nt > 1 && n > 256) schedule(dynamic, 64)
  for (idx_t i = 0; i < n; ++i) {
    Rng rng(mix64(seed, kStreamSbm), static_cast<std::uint64_t>(i));
    const idx_t bi = block_of[i];
    idx_t j = i + 1;
    while (j < n) {
      const idx_t bj = block_of[j];
      const idx_t end = block_end[bj];
      const double p = block_probabilities.at(bi, bj);
      if (p <= 0.0) {
        j = end;
        continue;
      }
      if (p >= 1.0) {
        for (; j < end; ++j) row_edges[i].push_back(j);
        continue;
      }
      const double log1mp = std::log1p(-p);
      while (j < end) {
        double u = rng.uniform01();
        if (u <= 0.0) u = 0x1.0p-53;
        const double gap = std::floor(std::log(u) / log1mp);
        if (gap >= static_cast<double>(end - j)) break;
        j += static_cast<idx_t>(gap);
        row_edges[i].push_back(j);
        ++j;
      }
      j = std::max(j, end);
    }
  }

  std::vector<std::pair<idx_t, idx_t>> edges;
  for (idx_t i = 0; i < n; ++i)
    for (idx_t j : row_edges[i]) edges.emplace_back(i, j);
  return SparseGraph::from_edges(n, std::move(edges));
}

std::string GenParams::to_json() const {
  nlohmann::json j;
  j["class_fractions"] = class_fractions;
  {
    nlohmann::json rows = nlohmann::json::array();
    for (idx_t r = 0; r < preference_mean.rows; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (idx_t c = 0; c < preference_mean.cols; ++c)
        row.push_back(preference_mean.at(r, c));
      rows.push_back(std::move(row));
    }
    j["preference_mean"] = std::move(rows);
  }
  {
    nlohmann::json rows = nlohmann::json::array();
    for (idx_t r = 0; r < attr_correlation.rows; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (idx_t c = 0; c < attr_correlation.cols; ++c)
        row.push_back(attr_correlation.at(r, c));
      rows.push_back(std::move(row));
    }
    j["attr_correlation"] = std::move(rows);
  }
  j["node_count"] = node_count;
  j["target_edge_count"] = target_edge_count;
  j["attr_count"] = attr_count;
  j["class_count"] = class_count;
  j["degree_model"] = degree_model == DegreeModel::powerlaw ? "powerlaw" : "uniform";
  j["powerlaw_exponent"] = powerlaw_exponent;
  j["attr_model"] = attr_model == AttrModel::bernoulli ? "bernoulli" : "gaussian";
  j["gaussian_sigma"] = gaussian_sigma;
  j["seed"] = seed;
  return j.dump(2);
}

GenParams GenParams::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  GenParams p;
  p.class_fractions = j.at("class_fractions").get<std::vector<double>>();
  {
    const auto& rows = j.at("preference_mean");
    p.preference_mean = DenseMatrix(static_cast<idx_t>(rows.size()),
                                    rows.empty() ? 0 : static_cast<idx_t>(rows[0].size()));
    for (idx_t r = 0; r < p.preference_mean.rows; ++r)
      for (idx_t c = 0; c < p.preference_mean.cols; ++c)
        p.preference_mean.at(r, c) = rows[r][c].get<double>();
  }
  {
    const auto& rows = j.at("attr_correlation");
    p.attr_correlation = DenseMatrix(static_cast<idx_t>(rows.size()),
                                     rows.empty() ? 0 : static_cast<idx_t>(rows[0].size()));
    for (idx_t r = 0; r < p.attr_correlation.rows; ++r)
      for (idx_t c = 0; c < p.attr_correlation.cols; ++c)
        p.attr_correlation.at(r, c) = rows[r][c].get<double>();
  }
  p.node_count = j.at("node_count").get<idx_t>();
  p.target_edge_count = j.at("target_edge_count").get<idx_t>();
  p.attr_count = j.at("attr_count").get<idx_t>();
  p.class_count = j.at("class_count").get<idx_t>();
  const std::string dm = j.at("degree_model").get<std::string>();
  if (dm == "powerlaw")
    p.degree_model = DegreeModel::powerlaw;
  else if (dm == "uniform")
    p.degree_model = DegreeModel::uniform;
  else
    throw std::invalid_argument("unknown degree_model '" + dm + "'");
  p.powerlaw_exponent = j.at("powerlaw_exponent").get<double>();
  const std::string am = j.at("attr_model").get<std::string>();
  if (am == "bernoulli")
    p.attr_model = AttrModel::bernoulli;
  else if (am == "gaussian")
    p.attr_model = AttrModel::gaussian;
  else
    throw std::invalid_argument("unknown attr_model '" + am + "'");
  p.gaussian_sigma = j.at("gaussian_sigma").get<double>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

}  // namespace synbench
