#pragma once

namespace maxlin {

/// Number of OpenMP threads parallel kernels will use.
int max_threads();

/// Sets the OpenMP thread count; n <= 0 leaves the runtime default.
/// All kernels produce identical results for every thread count.
void set_threads(int n);

}  // namespace maxlin
