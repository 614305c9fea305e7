// mecsim command-line front end: run the benchmark sweep, solve a single
// deployment, or dump the default configuration.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mecsim/allocation.hpp"
#include "mecsim/demand.hpp"
#include "mecsim/game.hpp"
#include "mecsim/pso.hpp"
#include "mecsim/sweep.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string output_dir;
  bool seed_set = false;
  std::uint64_t seed = 0;
};

mecsim::ExperimentConfig load_config(const CommonOptions& opts) {
  mecsim::ExperimentConfig config;
  if (!opts.config_path.empty()) {
    config = mecsim::ExperimentConfig::from_json_file(opts.config_path);
  }
  if (!opts.output_dir.empty()) config.output_dir = opts.output_dir;
  if (opts.seed_set) config.seed = opts.seed;
  return config;
}

int run_sweep_command(const CommonOptions& opts,
                      const std::vector<std::size_t>& bs_counts,
                      const std::vector<double>& alphas, unsigned workers,
                      bool timing, bool no_plot_data, bool verbose) {
  mecsim::ExperimentConfig config = load_config(opts);
  if (!bs_counts.empty()) config.bs_counts = bs_counts;
  if (!alphas.empty()) config.alphas = alphas;
  config.validate();

  if (verbose) {
    std::cerr << "sweep: " << config.bs_counts.size() * config.alphas.size()
              << " points, seed " << config.seed << ", output '"
              << config.output_dir << "'\n";
  }
  const mecsim::SweepResult result =
      mecsim::run_sweep(config, workers, timing);
  if (!no_plot_data) {
    mecsim::emit_plot_data(result.records, config.zone_side,
                           config.output_dir);
  }
  if (verbose) {
    for (const mecsim::SweepRecord& rec : result.records) {
      std::fprintf(stderr,
                   "  K=%-3zu alpha=%-4g %-8s avg_utility=%-12.6g sat=%.6g\n",
                   rec.k_count, rec.alpha, rec.solution.c_str(),
                   rec.avg_utility, rec.sat);
    }
  }
  std::cout << "wrote "
            << (std::filesystem::path(config.output_dir) / "sweep.csv")
                   .string()
            << "\n";
  return 0;
}

int run_solve_command(const CommonOptions& opts, std::size_t k_count,
                      double alpha, bool as_json) {
  mecsim::ExperimentConfig config = load_config(opts);
  const mecsim::NetworkScenario scenario = mecsim::make_grid_scenario(
      k_count, config.zone_side, config.params, alpha);

  mecsim::PsoConfig pso_config = config.pso;
  pso_config.dim = scenario.bs_count();
  pso_config.lower_bound = scenario.p_floor();
  pso_config.upper_bound = scenario.p_max();
  pso_config.seed = config.seed;
  const mecsim::PsoResult pso = mecsim::optimize(scenario, pso_config);
  const mecsim::GameEvaluation eval =
      mecsim::evaluate_game(scenario, pso.best_powers);
  const mecsim::DemandProfile demand =
      mecsim::demand_profile(scenario, pso.best_powers);
  const mecsim::AllocationResult alloc =
      mecsim::allocate_lp(demand.f_bs, scenario.server_capacity());

  if (as_json) {
    nlohmann::json root;
    root["k_count"] = k_count;
    root["alpha"] = alpha;
    root["seed"] = config.seed;
    root["powers"] = pso.best_powers.powers;
    root["potential"] = pso.best_potential;
    root["potential_trace"] = pso.trace;
    root["utilities"] = eval.utilities;
    root["demands"] = demand.f_bs;
    root["interference"] = demand.interference;
    root["allocation"] = alloc.s_bs;
    root["sat"] = alloc.sat;
    std::cout << root.dump(2) << "\n";
    return 0;
  }

  std::printf("scenario: K=%zu, alpha=%g, zone %g m, seed %llu\n", k_count,
              alpha, config.zone_side,
              static_cast<unsigned long long>(config.seed));
  std::printf("best potential: %.10g\n", pso.best_potential);
  std::printf("%-4s %-14s %-14s %-14s %-14s\n", "bs", "power_w", "utility",
              "demand", "granted");
  for (std::size_t k = 0; k < scenario.bs_count(); ++k) {
    std::printf("%-4zu %-14.6g %-14.6g %-14.6g %-14.6g\n", k,
                pso.best_powers.powers[k], eval.utilities[k], demand.f_bs[k],
                alloc.s_bs[k]);
  }
  std::printf("sat: %.10g\n", alloc.sat);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-stage simulator for edge networks: potential-game transmit-power "
      "control via particle swarm optimization, then computing-resource "
      "allocation on a shared edge server."};
  app.require_subcommand(1);

  CommonOptions opts;
  std::vector<std::size_t> bs_counts;
  std::vector<double> alphas;
  unsigned workers = 1;
  bool timing = false;
  bool no_plot_data = false;
  bool verbose = false;

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run the (bs_count, alpha) benchmark sweep");
  sweep->add_option("--config", opts.config_path, "JSON config file");
  sweep->add_option("--output-dir", opts.output_dir,
                    "Override the output directory");
  sweep->add_option("--seed", opts.seed, "Override the master seed")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  sweep->add_option("--bs-counts", bs_counts,
                    "Override the BS counts (comma separated)")
      ->delimiter(',');
  sweep->add_option("--alphas", alphas,
                    "Override the path-loss exponents (comma separated)")
      ->delimiter(',');
  sweep->add_option("--workers", workers,
                    "Worker threads (does not change the results)");
  sweep->add_flag("--timing", timing,
                  "Write measured wall times to the CSV (the file is then "
                  "no longer byte-reproducible)");
  sweep->add_flag("--no-plot-data", no_plot_data,
                  "Skip the per-metric plot series files");
  sweep->add_flag("-v,--verbose", verbose, "Progress output on stderr");

  std::size_t solve_k = 4;
  double solve_alpha = 4.0;
  bool solve_json = false;
  CLI::App* solve =
      app.add_subcommand("solve", "Solve a single deployment and print it");
  solve->add_option("--config", opts.config_path, "JSON config file");
  solve->add_option("--seed", opts.seed, "Override the master seed")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  solve->add_option("--k", solve_k, "Number of base stations");
  solve->add_option("--alpha", solve_alpha, "Path-loss exponent");
  solve->add_flag("--json", solve_json, "Emit JSON instead of a table");

  std::string dump_path;
  CLI::App* dump = app.add_subcommand(
      "dump-config", "Print the default configuration as JSON");
  dump->add_option("--output", dump_path, "Write to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      return run_sweep_command(opts, bs_counts, alphas, workers, timing,
                               no_plot_data, verbose);
    }
    if (solve->parsed()) {
      return run_solve_command(opts, solve_k, solve_alpha, solve_json);
    }
    if (dump->parsed()) {
      const std::string text = mecsim::ExperimentConfig{}.to_json_text();
      if (dump_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(dump_path);
        if (!out || !(out << text).flush()) {
          throw std::runtime_error("cannot write '" + dump_path + "'");
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
