#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "synbench/graph.hpp"

namespace synbench {

enum class DegreeModel { powerlaw, uniform };
enum class AttrModel { bernoulli, gaussian };

/// Everything the generator needs. A Dataset generated from these parameters
/// round-trips: features extracted from it approximate (rho, M, H) within the
/// tolerances tested in the acceptance suite.
struct GenParams {
  std::vector<double> class_fractions;  // rho, sums to 1
  DenseMatrix preference_mean;          // M, k x k row-stochastic
  DenseMatrix attr_correlation;         // H, d x k
  idx_t node_count = 0;
  idx_t target_edge_count = 0;
  idx_t attr_count = 0;
  idx_t class_count = 0;
  DegreeModel degree_model = DegreeModel::powerlaw;
  double powerlaw_exponent = 2.5;
  AttrModel attr_model = AttrModel::bernoulli;
  double gaussian_sigma = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
  std::string to_json() const;
  static GenParams from_json(const std::string& text);
};

/// Class counts are the largest-remainder apportionment of n * rho (repaired
/// to keep every class non-empty), node order shuffled by seed.
LabelVector assign_labels(const std::vector<double>& fractions, idx_t n,
                          std::uint64_t seed);

/// Expected-degree array summing to 2m. Power-law draws are truncated to
/// [1, n-1] before rescaling; uniform returns the constant 2m/n.
std::vector<double> sample_degrees(idx_t n, idx_t m, DegreeModel model,
                                   double exponent, std::uint64_t seed);

/// Stub-proposal topology generation: every node draws edge proposals whose
/// target class follows its row of M and whose target node is chosen within
/// that class proportionally to expected degree. Proposals are symmetrized;
/// self-loops and duplicates are dropped without resampling. The per-node
/// proposal budget is calibrated against a Poisson collision model so the
/// expected post-dedup edge count matches m = sum(degrees)/2.
SparseGraph generate_topology(const LabelVector& labels, const DenseMatrix& m_pref,
                              const std::vector<double>& degrees, std::uint64_t seed);

/// bernoulli: X[i][a] ~ Bernoulli(H[a][class(i)]); gaussian: Normal(., sigma).
AttributeMatrix generate_attributes(const LabelVector& labels, const DenseMatrix& h,
                                    idx_t attr_count, AttrModel model, double sigma,
                                    std::uint64_t seed);

/// Composes the four steps above; deterministic in params (identical bytes on
/// disk for identical params), provenance recorded in the dataset.
Dataset generate(const GenParams& params);

/// Plain stochastic block model: every unordered pair (i, j) becomes an edge
/// independently with probability block_probabilities[c_i][c_j]. Produces no
/// attributes. Nodes are laid out contiguously per block.
SparseGraph sbm_generate(const DenseMatrix& block_probabilities,
                         const std::vector<idx_t>& class_counts, std::uint64_t seed);

}  // namespace synbench
