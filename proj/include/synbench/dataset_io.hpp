#pragma once
#include <filesystem>

#include "synbench/graph.hpp"

namespace synbench {

// Dataset directory layout:
//   graph.edges     TSV "u\tv", 0-indexed, u < v, sorted by (u, v)
//   attrs.tsv       header "# n=<n> d=<d> mode=<binary|continuous>",
//                   rows "node\tattr\tvalue", zero entries omitted
//   labels.tsv      header "# k=<k>", rows "node\tlabel"
//   provenance.json generation parameters + seed, or "external"

void save_dataset(const Dataset& dataset, const std::filesystem::path& directory);

/// Loads and validates; edge input is symmetrized and deduplicated, input
/// self-loops are dropped with a warning on stderr.
Dataset load_dataset(const std::filesystem::path& directory);

}  // namespace synbench
