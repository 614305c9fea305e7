// Transmit-power control game between base stations: per-BS utility and
// the exact potential function the swarm optimizer maximizes.

#pragma once

#include <cstddef>
#include <vector>

#include "mecsim/netmodel.hpp"

namespace mecsim {

struct GameEvaluation {
  std::vector<double> utilities;
  double potential;
};

// Utility of BS k: its zero-interference demand minus the priced demand
// shifts it exchanges with every other BS.  With a single BS the utility
// reduces to max_compute (there is nobody to interfere with).
double utility(const NetworkScenario& scenario, const PowerProfile& powers,
               std::size_t k);

// Potential of the profile.  A unilateral power change moves the potential
// by exactly the deviator's utility change, for any cost split b.
double potential(const NetworkScenario& scenario, const PowerProfile& powers);

// Utilities and potential in one pass (shares the pairwise demand terms).
GameEvaluation evaluate_game(const NetworkScenario& scenario,
                             const PowerProfile& powers);

// Residual |delta(potential) - delta(utility_k)| / max(1, |delta(potential)|)
// for the unilateral deviation of BS k to new_power.
double verify_exact_potential(const NetworkScenario& scenario,
                              const PowerProfile& powers, std::size_t k,
                              double new_power);

}  // namespace mecsim
