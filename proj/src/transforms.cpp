#include "synbench/transforms.hpp"

#include <cstdio>
#include <stdexcept>

namespace synbench {

std::vector<double> configure_class_sizes(double alpha, idx_t y) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  if (y < 2) throw std::invalid_argument("class count must be >= 2");
  std::vector<double> rho(static_cast<std::size_t>(y));
  double remaining = 1.0;
  for (idx_t l = 0; l < y; ++l) {
    if (l == y - 1) {
      rho[l] = remaining;
    } else {
      rho[l] = alpha * remaining;
      remaining -= rho[l];
    }
  }
  return rho;
}

std::vector<double> balanced_class_sizes(idx_t y) {
  if (y < 1) throw std::invalid_argument("class count must be >= 1");
  return std::vector<double>(static_cast<std::size_t>(y), 1.0 / static_cast<double>(y));
}

DenseMatrix configure_preference_mean(const DenseMatrix& m, double beta) {
  if (m.rows != m.cols) throw std::invalid_argument("preference mean must be square");
  if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
  const idx_t k = m.rows;
  if (k == 1 && beta > 0.0)
    throw std::invalid_argument("beta > 0 needs at least 2 classes");
  if (beta == 0.0) return m;  // exact identity
  DenseMatrix out(k, k);
  const double shift = 0.1 * beta;
  const double spread = k > 1 ? 0.1 * beta / static_cast<double>(k - 1) : 0.0;
  for (idx_t r = 0; r < k; ++r) {
    double sum = 0.0;
    for (idx_t c = 0; c < k; ++c) {
      double v = r == c ? std::max(m.at(r, c) - shift, 0.0) : m.at(r, c) + spread;
      out.at(r, c) = v;
      sum += v;
    }
    for (idx_t c = 0; c < k; ++c) out.at(r, c) /= sum;
  }
  return out;
}

DenseMatrix mix_attr_correlation(const DenseMatrix& h, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  double c = 0.0;
  for (double v : h.data) c += v;
  c /= static_cast<double>(h.data.size());
  DenseMatrix out = h;
  for (double& v : out.data) v = (v + gamma * c) / (1.0 + gamma);
  return out;
}

DenseMatrix uniform_attr_correlation(const DenseMatrix& h) {
  double c = 0.0;
  for (double v : h.data) c += v;
  c /= static_cast<double>(h.data.size());
  DenseMatrix out(h.rows, h.cols, c);
  return out;
}

std::string AxisPoint::str() const {
  switch (tag) {
    case Tag::balanced:
      return "balanced";
    case Tag::uniform:
      return "uniform";
    case Tag::pair:
      return std::to_string(n) + "x" + std::to_string(m);
    case Tag::number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", value);
      return buf;
    }
  }
  return "?";
}

void SweepAxis::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep axis has no values");
  for (const auto& p : values) {
    switch (kind) {
      case AxisKind::class_size:
        if (p.tag == AxisPoint::Tag::number && !(p.value > 0.0 && p.value < 1.0))
          throw std::invalid_argument("alpha must lie in (0, 1)");
        if (p.tag == AxisPoint::Tag::uniform || p.tag == AxisPoint::Tag::pair)
          throw std::invalid_argument("class_size axis takes numbers or 'balanced'");
        break;
      case AxisKind::preference:
        if (p.tag != AxisPoint::Tag::number || p.value < 0.0)
          throw std::invalid_argument("preference axis takes beta >= 0");
        break;
      case AxisKind::attribute:
        if (p.tag == AxisPoint::Tag::number && p.value < 0.0)
          throw std::invalid_argument("gamma must be >= 0");
        if (p.tag == AxisPoint::Tag::balanced || p.tag == AxisPoint::Tag::pair)
          throw std::invalid_argument("attribute axis takes numbers or 'uniform'");
        break;
      case AxisKind::graph_size:
        if (p.tag != AxisPoint::Tag::pair || p.n <= 0 || p.m <= 0)
          throw std::invalid_argument("graph_size axis takes (n, m) pairs");
        break;
      case AxisKind::edge_density:
        if (p.tag != AxisPoint::Tag::number || p.value <= 0.0)
          throw std::invalid_argument("edge_density axis takes positive edge counts");
        break;
    }
  }
}

const char* axis_kind_name(AxisKind kind) {
  switch (kind) {
    case AxisKind::class_size: return "class_size";
    case AxisKind::preference: return "preference";
    case AxisKind::attribute: return "attribute";
    case AxisKind::graph_size: return "graph_size";
    case AxisKind::edge_density: return "edge_density";
  }
  return "?";
}

AxisKind axis_kind_from_name(const std::string& name) {
  if (name == "class_size") return AxisKind::class_size;
  if (name == "preference") return AxisKind::preference;
  if (name == "attribute") return AxisKind::attribute;
  if (name == "graph_size") return AxisKind::graph_size;
  if (name == "edge_density") return AxisKind::edge_density;
  throw std::invalid_argument("unknown axis kind '" + name + "'");
}

SweepAxis default_class_size_axis() {
  return {AxisKind::class_size,
          {AxisPoint::balanced(), AxisPoint::number(0.5), AxisPoint::number(0.7)}};
}

SweepAxis default_preference_axis() {
  return {AxisKind::preference,
          {AxisPoint::number(0), AxisPoint::number(2), AxisPoint::number(4),
           AxisPoint::number(6), AxisPoint::number(8)}};
}

SweepAxis default_attribute_axis() {
  return {AxisKind::attribute,
          {AxisPoint::number(16), AxisPoint::number(4), AxisPoint::number(1),
           AxisPoint::number(0), AxisPoint::uniform()}};
}

SweepAxis default_graph_size_axis() {
  return {AxisKind::graph_size,
          {AxisPoint::pair(3000, 5000), AxisPoint::pair(6000, 10000),
           AxisPoint::pair(9000, 15000), AxisPoint::pair(12000, 20000)}};
}

SweepAxis default_edge_density_axis() {
  return {AxisKind::edge_density,
          {AxisPoint::number(5000), AxisPoint::number(10000),
           AxisPoint::number(15000), AxisPoint::number(20000)}};
}

}  // namespace synbench
