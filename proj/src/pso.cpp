#include "mecsim/pso.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mecsim/game.hpp"
#include "mecsim/rng.hpp"

namespace mecsim {

namespace {

// Evaluate the potential of every particle.  Results land in a slot per
// particle, so the later best-update reduction (ascending index) gives the
// same answer for any worker count.
std::vector<double> evaluate_swarm(const NetworkScenario& scenario,
                                   const std::vector<std::vector<double>>& xs,
                                   unsigned workers) {
  std::vector<double> fitness(xs.size());
  const auto eval_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      fitness[i] = potential(scenario, PowerProfile{xs[i]});
    }
  };
  if (workers <= 1 || xs.size() <= 1) {
    eval_range(0, xs.size());
    return fitness;
  }
  const std::size_t n_threads =
      std::min<std::size_t>(workers, xs.size());
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  const std::size_t chunk = (xs.size() + n_threads - 1) / n_threads;
  for (std::size_t t = 0; t < n_threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(xs.size(), begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(eval_range, begin, end);
  }
  for (std::thread& th : pool) th.join();
  return fitness;
}

void update_bests(PsoState& state, const std::vector<double>& fitness) {
  for (std::size_t i = 0; i < state.positions.size(); ++i) {
    if (fitness[i] > state.personal_best_fitness[i]) {
      state.personal_best[i] = state.positions[i];
      state.personal_best_fitness[i] = fitness[i];
      if (fitness[i] > state.global_best_fitness) {
        state.global_best_fitness = fitness[i];
        state.global_best = state.positions[i];
      }
    }
  }
}

void check_state(const PsoState& state, const PsoConfig& config) {
  const bool shape_ok =
      state.positions.size() == config.n_particles &&
      state.velocities.size() == config.n_particles &&
      state.personal_best.size() == config.n_particles &&
      state.personal_best_fitness.size() == config.n_particles &&
      state.global_best.size() == config.dim;
  if (!shape_ok) {
    throw std::invalid_argument("PsoState: shape does not match config");
  }
}

}  // namespace

PsoConfig PsoConfig::for_scenario(const NetworkScenario& scenario,
                                  std::uint64_t seed_in) {
  PsoConfig config;
  config.dim = scenario.bs_count();
  config.lower_bound = scenario.p_floor();
  config.upper_bound = scenario.p_max();
  config.seed = seed_in;
  return config;
}

void PsoConfig::validate(const NetworkScenario& scenario) const {
  if (n_particles == 0) {
    throw std::invalid_argument("PsoConfig: n_particles must be >= 1");
  }
  if (!(inertia >= 0.0 && inertia <= 1.0)) {
    throw std::invalid_argument("PsoConfig: inertia must be in [0, 1]");
  }
  if (!(c1 >= 0.0) || !(c2 >= 0.0)) {
    throw std::invalid_argument("PsoConfig: c1 and c2 must be >= 0");
  }
  if (dim != scenario.bs_count()) {
    throw std::invalid_argument("PsoConfig: dim must equal the BS count");
  }
  if (!(lower_bound < upper_bound) ||
      lower_bound < scenario.p_floor() || upper_bound > scenario.p_max()) {
    throw std::invalid_argument(
        "PsoConfig: bounds must satisfy p_floor <= lower < upper <= p_max");
  }
}

PsoState initialize(const NetworkScenario& scenario, const PsoConfig& config,
                    unsigned workers) {
  config.validate(scenario);
  Rng rng(config.seed, 0);

  PsoState state;
  state.positions.assign(config.n_particles,
                         std::vector<double>(config.dim, 0.0));
  for (std::size_t i = 0; i < config.n_particles; ++i) {
    for (std::size_t j = 0; j < config.dim; ++j) {
      state.positions[i][j] =
          rng.uniform(config.lower_bound, config.upper_bound);
    }
  }
  state.velocities.assign(config.n_particles,
                          std::vector<double>(config.dim, 0.0));
  state.personal_best = state.positions;
  state.personal_best_fitness =
      evaluate_swarm(scenario, state.positions, workers);

  state.global_best_fitness = state.personal_best_fitness[0];
  state.global_best = state.personal_best[0];
  for (std::size_t i = 1; i < config.n_particles; ++i) {
    if (state.personal_best_fitness[i] > state.global_best_fitness) {
      state.global_best_fitness = state.personal_best_fitness[i];
      state.global_best = state.personal_best[i];
    }
  }
  state.iteration = 0;
  return state;
}

PsoState step(const PsoState& state, const NetworkScenario& scenario,
              const PsoConfig& config, unsigned workers) {
  config.validate(scenario);
  check_state(state, config);

  PsoState next = state;
  Rng rng(config.seed, state.iteration + 1);
  for (std::size_t i = 0; i < config.n_particles; ++i) {
    // One draw per attraction term per particle, shared by all coordinates.
    const double r1 = rng.uniform01();
    const double r2 = rng.uniform01();
    for (std::size_t j = 0; j < config.dim; ++j) {
      double v = config.inertia * next.velocities[i][j] +
                 config.c1 * r1 *
                     (next.personal_best[i][j] - next.positions[i][j]) +
                 config.c2 * r2 *
                     (next.global_best[j] - next.positions[i][j]);
      double x = next.positions[i][j] + v;
      if (x < config.lower_bound) {
        x = config.lower_bound;
        v = 0.0;
      } else if (x > config.upper_bound) {
        x = config.upper_bound;
        v = 0.0;
      }
      next.positions[i][j] = x;
      next.velocities[i][j] = v;
    }
  }

  const std::vector<double> fitness =
      evaluate_swarm(scenario, next.positions, workers);
  update_bests(next, fitness);
  next.iteration = state.iteration + 1;
  return next;
}

PsoResult optimize(const NetworkScenario& scenario, const PsoConfig& config,
                   unsigned workers) {
  PsoState state = initialize(scenario, config, workers);
  PsoResult result;
  result.trace.reserve(config.max_iters + 1);
  result.trace.push_back(state.global_best_fitness);
  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    state = step(state, scenario, config, workers);
    result.trace.push_back(state.global_best_fitness);
  }
  result.best_powers = PowerProfile{state.global_best};
  result.best_potential = state.global_best_fitness;
  return result;
}

}  // namespace mecsim
