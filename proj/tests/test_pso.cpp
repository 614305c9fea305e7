#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mecsim/game.hpp"
#include "mecsim/netmodel.hpp"
#include "mecsim/pso.hpp"
#include "test_helpers.hpp"

using namespace mecsim;

namespace {

bool results_identical(const PsoResult& a, const PsoResult& b) {
  if (a.best_potential != b.best_potential) return false;
  if (a.best_powers.powers != b.best_powers.powers) return false;
  if (a.trace != b.trace) return false;
  return true;
}

void check_in_bounds(const PsoState& st, const PsoConfig& cfg) {
  for (const auto& row : {st.positions, st.personal_best}) {
    for (const auto& vec : row) {
      for (double x : vec) {
        CHECK(x >= cfg.lower_bound);
        CHECK(x <= cfg.upper_bound);
      }
    }
  }
  for (double x : st.global_best) {
    CHECK(x >= cfg.lower_bound);
    CHECK(x <= cfg.upper_bound);
  }
}

}  // namespace

TEST_CASE("for_scenario fills dimension and bounds from the scenario") {
  const NetworkScenario s = testutil::default_grid(9);
  const PsoConfig cfg = PsoConfig::for_scenario(s, 42);
  CHECK(cfg.dim == 9);
  CHECK(cfg.lower_bound == s.p_floor());
  CHECK(cfg.upper_bound == s.p_max());
  CHECK(cfg.seed == 42);
  CHECK(cfg.n_particles == 6);
  CHECK(cfg.max_iters == 5);
  CHECK(cfg.inertia == 0.8);
  CHECK(cfg.c1 == 0.9);
  CHECK(cfg.c2 == 0.9);
  CHECK_NOTHROW(cfg.validate(s));
}

TEST_CASE("config validation rejects inconsistent settings") {
  const NetworkScenario s = testutil::default_grid(4);
  PsoConfig cfg = PsoConfig::for_scenario(s, 1);

  PsoConfig bad = cfg;
  bad.dim = 3;
  CHECK_THROWS_AS(bad.validate(s), std::invalid_argument);
  bad = cfg;
  bad.n_particles = 0;
  CHECK_THROWS_AS(bad.validate(s), std::invalid_argument);
  bad = cfg;
  bad.inertia = 1.5;
  CHECK_THROWS_AS(bad.validate(s), std::invalid_argument);
  bad = cfg;
  bad.inertia = -0.1;
  CHECK_THROWS_AS(bad.validate(s), std::invalid_argument);
  bad = cfg;
  bad.c1 = -1.0;
  CHECK_THROWS_AS(bad.validate(s), std::invalid_argument);
  bad = cfg;
  bad.lower_bound = 1e-8;  // below the scenario power floor
  CHECK_THROWS_AS(bad.validate(s), std::invalid_argument);
  bad = cfg;
  bad.upper_bound = 6.0;  // above the scenario power cap
  CHECK_THROWS_AS(bad.validate(s), std::invalid_argument);
  bad = cfg;
  bad.lower_bound = 2.0;
  bad.upper_bound = 1.0;
  CHECK_THROWS_AS(bad.validate(s), std::invalid_argument);
}

TEST_CASE("initialization: zero velocities, bests mirror positions") {
  const NetworkScenario s = testutil::default_grid(4);
  const PsoConfig cfg = PsoConfig::for_scenario(s, 7);
  const PsoState st = initialize(s, cfg);
  REQUIRE(st.positions.size() == cfg.n_particles);
  CHECK(st.iteration == 0);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cfg.n_particles; ++i) {
    REQUIRE(st.positions[i].size() == cfg.dim);
    for (double v : st.velocities[i]) CHECK(v == 0.0);
    CHECK(st.personal_best[i] == st.positions[i]);
    const double fit = potential(s, PowerProfile{st.positions[i]});
    CHECK(st.personal_best_fitness[i] == fit);
    if (fit > best) best = fit;
  }
  CHECK(st.global_best_fitness == best);
  check_in_bounds(st, cfg);
}

TEST_CASE("optimize is bit-identical across repeat runs and worker counts") {
  for (std::size_t k_count : {1, 4, 9}) {
    const NetworkScenario s = testutil::default_grid(k_count);
    const PsoConfig cfg = PsoConfig::for_scenario(s, 123);
    const PsoResult a = optimize(s, cfg, 1);
    const PsoResult b = optimize(s, cfg, 1);
    const PsoResult c = optimize(s, cfg, 4);
    const PsoResult d = optimize(s, cfg, 3);
    CHECK(results_identical(a, b));
    CHECK(results_identical(a, c));
    CHECK(results_identical(a, d));
  }
}

TEST_CASE("different seeds explore differently") {
  const NetworkScenario s = testutil::default_grid(4);
  const PsoResult a = optimize(s, PsoConfig::for_scenario(s, 1));
  const PsoResult b = optimize(s, PsoConfig::for_scenario(s, 2));
  CHECK_FALSE(results_identical(a, b));
}

TEST_CASE("step is a pure function of its inputs") {
  const NetworkScenario s = testutil::default_grid(4);
  const PsoConfig cfg = PsoConfig::for_scenario(s, 5);
  const PsoState st = initialize(s, cfg);
  const PsoState once = step(st, s, cfg);
  const PsoState again = step(st, s, cfg);
  CHECK(once.positions == again.positions);
  CHECK(once.velocities == again.velocities);
  CHECK(once.global_best == again.global_best);
  CHECK(once.global_best_fitness == again.global_best_fitness);
  CHECK(once.iteration == st.iteration + 1);
  // the input state is untouched
  CHECK(st.iteration == 0);
}

TEST_CASE("positions and bests stay inside the box over many runs") {
  Rng seeds(9090, 0);
  for (int run = 0; run < 200; ++run) {
    const NetworkScenario s = testutil::default_grid(2);
    PsoConfig cfg = PsoConfig::for_scenario(s, seeds.next());
    cfg.n_particles = 3;
    cfg.max_iters = 4;
    PsoState st = initialize(s, cfg);
    check_in_bounds(st, cfg);
    for (std::size_t t = 0; t < cfg.max_iters; ++t) {
      st = step(st, s, cfg);
      check_in_bounds(st, cfg);
    }
  }
}

TEST_CASE("a single-particle swarm with no attractors stays put") {
  const NetworkScenario s = testutil::default_grid(4);
  PsoConfig cfg = PsoConfig::for_scenario(s, 77);
  cfg.n_particles = 1;
  const PsoState st = initialize(s, cfg);
  const PsoState next = step(st, s, cfg);
  // personal and global attractor coincide with the position, velocity is
  // zero, so nothing moves
  CHECK(next.positions == st.positions);
  CHECK(next.global_best_fitness == st.global_best_fitness);
  const PsoResult r = optimize(s, cfg);
  for (double v : r.trace) CHECK(v == r.trace.front());
}

TEST_CASE("zero coefficients freeze the swarm") {
  const NetworkScenario s = testutil::default_grid(4);
  PsoConfig cfg = PsoConfig::for_scenario(s, 31);
  cfg.inertia = 0.0;
  cfg.c1 = 0.0;
  cfg.c2 = 0.0;
  const PsoState st = initialize(s, cfg);
  const PsoState next = step(st, s, cfg);
  CHECK(next.positions == st.positions);
  CHECK(next.velocities == st.velocities);
  CHECK(next.global_best_fitness == st.global_best_fitness);
}

TEST_CASE("pure global attraction pulls every particle toward the best") {
  const NetworkScenario s = testutil::default_grid(4);
  PsoConfig cfg = PsoConfig::for_scenario(s, 1234);
  cfg.inertia = 0.0;
  cfg.c1 = 0.0;
  cfg.c2 = 0.9;
  const PsoState st = initialize(s, cfg);
  const PsoState next = step(st, s, cfg);
  for (std::size_t i = 0; i < cfg.n_particles; ++i) {
    double ratio = -1.0;
    for (std::size_t j = 0; j < cfg.dim; ++j) {
      const double gap = st.global_best[j] - st.positions[i][j];
      const double moved = next.positions[i][j] - st.positions[i][j];
      // never past the attractor with c2 < 1, never away from it
      CHECK(std::abs(next.positions[i][j] - st.global_best[j]) <=
            std::abs(gap) + 1e-15);
      if (std::abs(gap) > 1e-9) {
        // one scalar draw per particle: the fractional step is the same
        // for every coordinate
        const double frac = moved / gap;
        CHECK(frac >= 0.0);
        if (ratio < 0.0) {
          ratio = frac;
        } else {
          CHECK(frac == doctest::Approx(ratio).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("global best fitness never decreases") {
  Rng rng(2121, 0);
  int steps_checked = 0;
  while (steps_checked < 1000) {
    const std::size_t k_count =
        1 + static_cast<std::size_t>(rng.uniform01() * 4.0);
    const NetworkScenario s = testutil::random_scenario(rng, k_count);
    PsoConfig cfg = PsoConfig::for_scenario(s, rng.next());
    cfg.n_particles = 2 + static_cast<std::size_t>(rng.uniform01() * 4.0);
    PsoState st = initialize(s, cfg);
    for (int t = 0; t < 8; ++t) {
      const double before = st.global_best_fitness;
      st = step(st, s, cfg);
      CHECK(st.global_best_fitness >= before);
      // the global best is the best personal best
      double best = -std::numeric_limits<double>::infinity();
      for (double f : st.personal_best_fitness) best = std::max(best, f);
      CHECK(st.global_best_fitness == best);
      // personal bests dominate the current positions
      for (std::size_t i = 0; i < cfg.n_particles; ++i) {
        CHECK(st.personal_best_fitness[i] >=
              potential(s, PowerProfile{st.positions[i]}));
      }
      ++steps_checked;
    }
  }
}

TEST_CASE("trace: one entry per iteration plus the start, nondecreasing") {
  const NetworkScenario s = testutil::default_grid(4);
  for (std::size_t iters : {0, 1, 5, 9}) {
    PsoConfig cfg = PsoConfig::for_scenario(s, 2025);
    cfg.max_iters = iters;
    const PsoResult r = optimize(s, cfg);
    REQUIRE(r.trace.size() == iters + 1);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      CHECK(r.trace[i] >= r.trace[i - 1]);
    }
    CHECK(r.trace.back() == r.best_potential);
    // the reported best reproduces its fitness
    CHECK(potential(s, r.best_powers) == r.best_potential);
    REQUIRE(r.best_powers.powers.size() == s.bs_count());
  }
}

TEST_CASE("optimized potential beats the all-max-power profile") {
  const NetworkScenario s = testutil::default_grid(4);
  const double full = potential(
      s, PowerProfile{std::vector<double>(s.bs_count(), s.p_max())});
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PsoResult r = optimize(s, PsoConfig::for_scenario(s, seed));
    if (r.best_potential >= full) ++wins;
  }
  CHECK(wins >= 9);
}

TEST_CASE("worker counts do not change intermediate states either") {
  const NetworkScenario s = testutil::default_grid(9);
  const PsoConfig cfg = PsoConfig::for_scenario(s, 808);
  PsoState a = initialize(s, cfg, 1);
  PsoState b = initialize(s, cfg, 4);
  CHECK(a.positions == b.positions);
  CHECK(a.personal_best_fitness == b.personal_best_fitness);
  CHECK(a.global_best_fitness == b.global_best_fitness);
  for (int t = 0; t < 3; ++t) {
    a = step(a, s, cfg, 1);
    b = step(b, s, cfg, 4);
    CHECK(a.positions == b.positions);
    CHECK(a.velocities == b.velocities);
    CHECK(a.personal_best_fitness == b.personal_best_fitness);
    CHECK(a.global_best == b.global_best);
    CHECK(a.global_best_fitness == b.global_best_fitness);
  }
}
