#include "synbench/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace synbench {

namespace {

constexpr idx_t kCoraNodes = 2708;
constexpr idx_t kCoraEdges = 5278;
constexpr idx_t kCoraAttrs = 1433;
constexpr idx_t kCoraClasses = 7;

// Weakly imbalanced class fractions, largest ~30%.
const std::vector<double> kCoraFractions = {0.30, 0.16, 0.15, 0.13, 0.11, 0.08, 0.07};

// Per-class homophily; averages exactly 0.81. The spread is chosen so that
// the beta=8 transform (diagonal minus 0.8, clamped at zero) leaves a
// diagonal mean of exactly 0.03.
const std::vector<double> kCoraDiagonal = {0.91, 0.87, 0.83, 0.79, 0.77, 0.76, 0.74};

// Off-diagonals take the rank-one form M_ij = u_i * u_j * rho_j, which makes
// rho_i * M_ij symmetric (edge intents between classes balance). The scale
// vector u solves u_i * (sum_j u_j rho_j - u_i rho_i) = 1 - diag_i.
DenseMatrix build_preference_mean() {
  const idx_t k = kCoraClasses;
  std::vector<double> u(static_cast<std::size_t>(k));
  for (idx_t i = 0; i < k; ++i) u[i] = std::sqrt(1.0 - kCoraDiagonal[i]);
  for (int it = 0; it < 500; ++it) {
    double t = 0.0;
    for (idx_t j = 0; j < k; ++j) t += u[j] * kCoraFractions[j];
    double delta = 0.0;
    for (idx_t i = 0; i < k; ++i) {
      const double next = (1.0 - kCoraDiagonal[i]) / (t - u[i] * kCoraFractions[i]);
      delta = std::max(delta, std::abs(next - u[i]));
      u[i] = 0.5 * (u[i] + next);
    }
    if (delta < 1e-15) break;
  }
  DenseMatrix m(k, k);
  for (idx_t i = 0; i < k; ++i) {
    for (idx_t j = 0; j < k; ++j)
      m.at(i, j) = i == j ? kCoraDiagonal[i] : u[i] * u[j] * kCoraFractions[j];
    double sum = 0.0;
    for (idx_t j = 0; j < k; ++j) sum += m.at(i, j);
    for (idx_t j = 0; j < k; ++j) m.at(i, j) /= sum;  // absorb ~1e-13 residue
  }
  return m;
}

// Each class has a 300-attribute bank whose Bernoulli rate rises from the
// 0.01 baseline to 0.045 on a smooth bump; banks overlap between adjacent
// classes (stride 150), mimicking shared vocabulary of related topics.
DenseMatrix build_attr_correlation() {
  constexpr double kBaseline = 0.010;
  constexpr double kPeak = 0.045;
  constexpr idx_t kBankWidth = 300;
  constexpr idx_t kBankStride = 150;
  DenseMatrix h(kCoraAttrs, kCoraClasses, kBaseline);
  for (idx_t c = 0; c < kCoraClasses; ++c) {
    const idx_t lo = c * kBankStride;
    for (idx_t a = lo; a < lo + kBankWidth && a < kCoraAttrs; ++a) {
      const double t = static_cast<double>(a - lo) / static_cast<double>(kBankWidth - 1);
      const double bump = 0.5 + 0.5 * std::sin(3.14159265358979323846 * t);
      h.at(a, c) = kBaseline + (kPeak - kBaseline) * bump;
    }
  }
  return h;
}

}  // namespace

GenParams cora_like_params() {
  GenParams p;
  p.class_fractions = kCoraFractions;
  p.preference_mean = build_preference_mean();
  p.attr_correlation = build_attr_correlation();
  p.node_count = kCoraNodes;
  p.target_edge_count = kCoraEdges;
  p.attr_count = kCoraAttrs;
  p.class_count = kCoraClasses;
  p.degree_model = DegreeModel::powerlaw;
  p.powerlaw_exponent = 2.5;
  p.attr_model = AttrModel::bernoulli;
  p.gaussian_sigma = 0.1;
  p.seed = 0;
  return p;
}

std::vector<std::string> preset_names() { return {"cora-like"}; }

GenParams preset_params(const std::string& name) {
  if (name == "cora-like") return cora_like_params();
  throw std::invalid_argument("unknown preset '" + name + "' (available: cora-like)");
}

}  // namespace synbench
