#pragma once

namespace synbench::par {

// Thread budget for the OpenMP kernels. The bench harness sets this to 1
// while its own worker pool is active so tasks do not oversubscribe cores.
int threads();
void set_threads(int t);

}  // namespace synbench::par
