#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace bllab {

/// Worker count: BLLAB_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [begin, end) across up to thread_count() threads.
/// Each index is visited exactly once; callers write to disjoint slots.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

/// Pairwise (cascade) summation. Result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace bllab
