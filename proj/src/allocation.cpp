#include "mecsim/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mecsim {

namespace {

void check_inputs(const std::vector<double>& f_bs, double capacity) {
  if (f_bs.empty()) {
    throw std::invalid_argument("allocation: need at least one BS");
  }
  if (!std::isfinite(capacity) || capacity < 0.0) {
    throw std::invalid_argument("allocation: capacity must be >= 0");
  }
  for (double f : f_bs) {
    if (!std::isfinite(f) || f < 0.0) {
      throw std::invalid_argument("allocation: demands must be >= 0");
    }
  }
}

void check_k_count(const std::vector<double>& f_bs, std::size_t k_count) {
  if (k_count != f_bs.size()) {
    throw std::invalid_argument("allocation: k_count must match demand size");
  }
}

double mean_satisfaction(const std::vector<double>& f_bs,
                         const std::vector<double>& s_bs, bool cap) {
  double total = 0.0;
  for (std::size_t k = 0; k < f_bs.size(); ++k) {
    if (f_bs[k] > 0.0) {
      const double coeff = s_bs[k] / f_bs[k];
      total += cap ? std::min(coeff, 1.0) : coeff;
    } else {
      total += 1.0;  // zero demand counts as fully satisfied
    }
  }
  return total / static_cast<double>(f_bs.size());
}

}  // namespace

AllocationResult allocate_lp(const std::vector<double>& f_bs,
                             double capacity) {
  check_inputs(f_bs, capacity);
  const std::size_t k_count = f_bs.size();

  const double total_demand =
      std::accumulate(f_bs.begin(), f_bs.end(), 0.0);
  if (total_demand <= capacity) {
    return AllocationResult{f_bs, 1.0};
  }

  // Objective density of BS k is 1 / (K * f_k): fractional knapsack, so
  // grant in ascending demand order, ties broken by BS index.
  std::vector<std::size_t> order(k_count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&f_bs](std::size_t a, std::size_t b) {
                     return f_bs[a] < f_bs[b];
                   });

  std::vector<double> s_bs(k_count, 0.0);
  double budget = capacity;
  for (std::size_t idx : order) {
    if (f_bs[idx] == 0.0) continue;  // excluded from the program
    if (budget <= 0.0) break;
    const double grant = std::min(f_bs[idx], budget);
    s_bs[idx] = grant;
    budget -= grant;
  }
  return AllocationResult{s_bs, mean_satisfaction(f_bs, s_bs, false)};
}

AllocationResult allocate_equal(const std::vector<double>& f_bs,
                                double capacity, std::size_t k_count) {
  check_inputs(f_bs, capacity);
  check_k_count(f_bs, k_count);
  const double share = capacity / static_cast<double>(k_count);
  std::vector<double> s_bs(k_count, share);
  return AllocationResult{s_bs, mean_satisfaction(f_bs, s_bs, true)};
}

AllocationResult allocate_capped_equal(const std::vector<double>& f_bs,
                                       double capacity, std::size_t k_count) {
  check_inputs(f_bs, capacity);
  check_k_count(f_bs, k_count);
  const double share = capacity / static_cast<double>(k_count);
  std::vector<double> s_bs(k_count, 0.0);
  for (std::size_t k = 0; k < k_count; ++k) {
    s_bs[k] = std::min(f_bs[k], share);
  }
  return AllocationResult{s_bs, mean_satisfaction(f_bs, s_bs, false)};
}

}  // namespace mecsim
