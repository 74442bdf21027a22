#pragma once
#include <string>
#include <vector>

#include "synbench/generator.hpp"

namespace synbench {

// The "cora-like" preset: a citation-network-scale parameter set with
// n=2708, m=5278, d=1433, k=7. The class features are synthetic but
// plausible; see the README for the construction. Anchors:
//   - the preference-mean diagonal averages 0.81,
//   - off-diagonals satisfy rho_i * M_ij = rho_j * M_ji, so the class-pair
//     edge intents are consistent with an undirected graph,
//   - H holds per-class banks of elevated-probability attributes over a low
//     baseline, overlapping between neighboring classes.
GenParams cora_like_params();

std::vector<std::string> preset_names();

/// Throws std::invalid_argument for unknown names.
GenParams preset_params(const std::string& name);

}  // namespace synbench
