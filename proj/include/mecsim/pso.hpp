// Particle swarm optimizer for the power-control game.  Fitness of a
// particle is the game potential of the power profile it encodes.
//
// Determinism: initialize() draws from Rng(seed, 0); the step that advances
// iteration t -> t+1 draws from Rng(seed, t + 1).  Within one step each
// particle draws exactly two uniforms (one per attraction term, shared
// across coordinates), in ascending particle order; initial positions are
// drawn particle-major, coordinate-minor.  Fitness evaluations may be
// farmed out to workers, but best updates are reduced in ascending particle
// index, so results are bit-identical for any worker count.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mecsim/netmodel.hpp"

namespace mecsim {

struct PsoConfig {
  std::size_t n_particles = 6;
  std::size_t max_iters = 5;
  double inertia = 0.8;  // in [0, 1]
  double c1 = 0.9;       // personal attraction, >= 0
  double c2 = 0.9;       // global attraction, >= 0
  std::size_t dim = 1;   // must equal the scenario BS count
  double lower_bound = 1e-6;  // W
  double upper_bound = 5.0;   // W
  std::uint64_t seed = 1;

  // dim and bounds filled from the scenario.
  static PsoConfig for_scenario(const NetworkScenario& scenario,
                                std::uint64_t seed);
  // Throws std::invalid_argument when inconsistent with the scenario.
  void validate(const NetworkScenario& scenario) const;
};

struct PsoState {
  std::vector<std::vector<double>> positions;      // n_particles x dim
  std::vector<std::vector<double>> velocities;     // n_particles x dim
  std::vector<std::vector<double>> personal_best;  // n_particles x dim
  std::vector<double> personal_best_fitness;
  std::vector<double> global_best;  // dim
  double global_best_fitness;
  std::size_t iteration;  // completed steps; selects the next RNG stream
};

struct PsoResult {
  PowerProfile best_powers;
  double best_potential;
  // global_best_fitness after initialization and after each step
  // (max_iters + 1 entries, nondecreasing).
  std::vector<double> trace;
};

PsoState initialize(const NetworkScenario& scenario, const PsoConfig& config,
                    unsigned workers = 1);

// One velocity/position update, position clamp (velocity component zeroed
// on contact), fitness re-evaluation and best update.  Pure: returns the
// advanced state.
PsoState step(const PsoState& state, const NetworkScenario& scenario,
              const PsoConfig& config, unsigned workers = 1);

PsoResult optimize(const NetworkScenario& scenario, const PsoConfig& config,
                   unsigned workers = 1);

}  // namespace mecsim
