#include "mecsim/game.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mecsim/demand.hpp"

namespace mecsim {

namespace {

// Pairwise demand terms both metrics are assembled from.  with_one[k][m]
// is the demand of BS k when BS m is its only interferer; no_interf[k] is
// its zero-interference demand.
struct DemandTerms {
  std::vector<double> no_interf;
  std::vector<std::vector<double>> with_one;
};

DemandTerms demand_terms(const NetworkScenario& scenario,
                         const PowerProfile& powers) {
  const std::size_t k_count = scenario.bs_count();
  DemandTerms terms;
  terms.no_interf.resize(k_count);
  terms.with_one.assign(k_count, std::vector<double>(k_count, 0.0));
  for (std::size_t k = 0; k < k_count; ++k) {
    terms.no_interf[k] = max_compute(scenario, powers.powers[k]);
  }
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t m = 0; m < k_count; ++m) {
      if (m == k) continue;
      terms.with_one[k][m] = single_interferer_compute(
          scenario, powers.powers[k], powers.powers[m],
          scenario.distance(m, k));
    }
  }
  return terms;
}

double utility_from_terms(const NetworkScenario& scenario,
                          const DemandTerms& terms, std::size_t k) {
  const std::size_t k_count = scenario.bs_count();
  if (k_count == 1) return terms.no_interf[k];
  double exchanged = 0.0;
  for (std::size_t m = 0; m < k_count; ++m) {
    if (m == k) continue;
    const double caused = terms.no_interf[k] - terms.with_one[k][m];
    const double suffered = terms.no_interf[m] - terms.with_one[m][k];
    exchanged += caused + suffered;
  }
  return terms.no_interf[k] -
         scenario.epsilon() / static_cast<double>(k_count - 1) * exchanged;
}

double potential_from_terms(const NetworkScenario& scenario,
                            const DemandTerms& terms) {
  const std::size_t k_count = scenario.bs_count();
  double total = 0.0;
  if (k_count == 1) return terms.no_interf[0];
  const double price = scenario.epsilon() / static_cast<double>(k_count - 1);
  for (std::size_t k = 0; k < k_count; ++k) {
    double caused = 0.0;
    double suffered = 0.0;
    for (std::size_t m = 0; m < k_count; ++m) {
      if (m == k) continue;
      caused += terms.no_interf[k] - terms.with_one[k][m];
      suffered += terms.no_interf[m] - terms.with_one[m][k];
    }
    total += terms.no_interf[k] -
             price * (scenario.b() * caused + (1.0 - scenario.b()) * suffered);
  }
  return total;
}

}  // namespace

double utility(const NetworkScenario& scenario, const PowerProfile& powers,
               std::size_t k) {
  validate_profile(scenario, powers);
  if (k >= scenario.bs_count()) {
    throw std::out_of_range("utility: index out of range");
  }
  return utility_from_terms(scenario, demand_terms(scenario, powers), k);
}

double potential(const NetworkScenario& scenario, const PowerProfile& powers) {
  validate_profile(scenario, powers);
  return potential_from_terms(scenario, demand_terms(scenario, powers));
}

GameEvaluation evaluate_game(const NetworkScenario& scenario,
                             const PowerProfile& powers) {
  validate_profile(scenario, powers);
  const DemandTerms terms = demand_terms(scenario, powers);
  GameEvaluation eval;
  eval.utilities.resize(scenario.bs_count());
  for (std::size_t k = 0; k < scenario.bs_count(); ++k) {
    eval.utilities[k] = utility_from_terms(scenario, terms, k);
  }
  eval.potential = potential_from_terms(scenario, terms);
  return eval;
}

double verify_exact_potential(const NetworkScenario& scenario,
                              const PowerProfile& powers, std::size_t k,
                              double new_power) {
  validate_profile(scenario, powers);
  if (k >= scenario.bs_count()) {
    throw std::out_of_range("verify_exact_potential: index out of range");
  }
  if (!std::isfinite(new_power) || new_power < scenario.p_floor() ||
      new_power > scenario.p_max()) {
    throw std::invalid_argument(
        "verify_exact_potential: new_power must lie in [p_floor, p_max]");
  }
  PowerProfile deviated = powers;
  deviated.powers[k] = new_power;

  const double phi_before = potential(scenario, powers);
  const double phi_after = potential(scenario, deviated);
  const double u_before = utility(scenario, powers, k);
  const double u_after = utility(scenario, deviated, k);

  const double delta_phi = phi_after - phi_before;
  const double delta_u = u_after - u_before;
  return std::abs(delta_phi - delta_u) / std::max(1.0, std::abs(delta_phi));
}

}  // namespace mecsim
