#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hypershift {

/// Worker count: HYPERSHIFT_THREADS if set and positive, else the hardware count.
unsigned thread_count();

/// Calls body(i) for i in [0, n) on up to thread_count() threads. The first
/// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Pairwise (cascade) summation; the reduction order depends only on the size.
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

}  // namespace hypershift
