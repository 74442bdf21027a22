#pragma once
#include <string>
#include <vector>

namespace synbench {

/// Entry point behind the synbench binary. Exit codes: 0 success,
/// 1 validation/configuration error, 2 runtime failure.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace synbench
