// Computing-resource allocation on the shared edge server: the linear
// program solved by a greedy fractional-knapsack pass plus the two
// reference splits it is benchmarked against.

#pragma once

#include <cstddef>
#include <vector>

namespace mecsim {

struct AllocationResult {
  std::vector<double> s_bs;  // granted compute per BS (cycles/bit)
  double sat;                // mean satisfaction in [0, 1]
};

// Maximize (1/K) * sum_k s_k / f_k  subject to  sum_k s_k <= capacity and
// 0 <= s_k <= f_k.  Zero-demand BSs are excluded from the program and count
// as fully satisfied.  When total demand fits the capacity, s = f and
// sat == 1 exactly.  Ties in demand are broken by BS index.
AllocationResult allocate_lp(const std::vector<double>& f_bs, double capacity);

// Reference split 1: s_k = capacity / k_count regardless of demand.  The
// raw grant may exceed f_k, so the reported satisfaction caps each per-BS
// coefficient at min(s_k / f_k, 1).
AllocationResult allocate_equal(const std::vector<double>& f_bs,
                                double capacity, std::size_t k_count);

// Reference split 2: s_k = min(f_k, capacity / k_count).
AllocationResult allocate_capped_equal(const std::vector<double>& f_bs,
                                       double capacity, std::size_t k_count);

}  // namespace mecsim
