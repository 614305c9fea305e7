// Expected computing demand a base station offloads to the shared edge
// server, derived from the coverage-radius distribution.

#pragma once

#include <cstddef>
#include <vector>

#include "mecsim/netmodel.hpp"

namespace mecsim {

// Per-BS demand (cycles/bit) and the interference level it was computed at.
struct DemandProfile {
  std::vector<double> f_bs;          // cycles/bit
  std::vector<double> interference;  // W
};

// integral_0^r_upper  r^alpha * exp(-c * r^alpha) dr  via deterministic
// adaptive Gauss-Kronrod quadrature.  c == 0 is returned in closed form.
double kernel_integral(double c, double alpha, double r_upper);

// Expected demand of BS k given the full power profile (interference from
// all other BSs included).
double required_compute(const NetworkScenario& scenario,
                        const PowerProfile& powers, std::size_t k);

// Demand of a BS transmitting with p_k under zero interference; the upper
// bound of its compute requirement.
double max_compute(const NetworkScenario& scenario, double p_k);

// Demand of a BS at power p_k when a single interferer at distance dist
// transmits with p_m.
double single_interferer_compute(const NetworkScenario& scenario, double p_k,
                                 double p_m, double dist);

// Demand change caused by that single interferer:
//   max_compute(p_k) - single_interferer_compute(p_k, p_m, dist).
// The value may be negative: with a very low noise floor the truncation of
// the service area at r_max makes the demand locally increasing in the
// interference, so no sign is enforced.
double demand_delta(const NetworkScenario& scenario, double p_k, double p_m,
                    double dist);

// required_compute / interference_at for every BS at once.
DemandProfile demand_profile(const NetworkScenario& scenario,
                             const PowerProfile& powers);

}  // namespace mecsim
