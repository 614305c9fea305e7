#include "mecsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "mecsim/demand.hpp"
#include "mecsim/game.hpp"

namespace mecsim {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Short form used inside file names ("3", "4.5", ...).
std::string format_alpha(double alpha) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", alpha);
  return buf;
}

double mean(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  return total / static_cast<double>(v.size());
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::runtime_error(std::string("run_sweep: non-finite ") + what);
  }
}

// Both solutions of one sweep point, already in record form.
struct PointOutput {
  std::vector<SweepRecord> records;
  std::vector<SweepPointDetail> details;
};

SweepRecord make_record(std::size_t k_count, double alpha,
                        const std::string& solution,
                        const GameEvaluation& eval,
                        const std::vector<double>& demands,
                        const std::vector<double>& powers, double sat,
                        double wall_time) {
  SweepRecord rec;
  rec.k_count = k_count;
  rec.alpha = alpha;
  rec.solution = solution;
  rec.avg_utility = mean(eval.utilities);
  std::vector<double> efficiency(powers.size());
  for (std::size_t k = 0; k < powers.size(); ++k) {
    efficiency[k] = demands[k] / powers[k];
  }
  rec.avg_compute_efficiency = mean(efficiency);
  rec.sat = sat;
  rec.avg_power = mean(powers);
  rec.wall_time = wall_time;
  require_finite(rec.avg_utility, "avg_utility");
  require_finite(rec.avg_compute_efficiency, "avg_compute_efficiency");
  require_finite(rec.sat, "sat");
  require_finite(rec.avg_power, "avg_power");
  return rec;
}

PointOutput run_point(const ExperimentConfig& config, std::size_t k_count,
                      std::size_t alpha_index) {
  const double alpha = config.alphas[alpha_index];
  const NetworkScenario scenario =
      make_grid_scenario(k_count, config.zone_side, config.params, alpha);
  const double capacity = config.params.server_capacity;
  PointOutput out;

  // Proposed solution: swarm-optimized powers, then the allocation LP.
  const auto t0 = std::chrono::steady_clock::now();
  PsoConfig pso_config = config.pso;
  pso_config.dim = scenario.bs_count();
  pso_config.lower_bound = scenario.p_floor();
  pso_config.upper_bound = scenario.p_max();
  pso_config.seed = sweep_point_seed(config.seed, k_count, alpha_index);
  const PsoResult pso = optimize(scenario, pso_config);
  const GameEvaluation eval_prop = evaluate_game(scenario, pso.best_powers);
  const DemandProfile demand_prop = demand_profile(scenario, pso.best_powers);
  const AllocationResult alloc_prop = allocate_lp(demand_prop.f_bs, capacity);
  const double wall_prop =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  out.records.push_back(make_record(k_count, alpha, "proposed", eval_prop,
                                    demand_prop.f_bs, pso.best_powers.powers,
                                    alloc_prop.sat, wall_prop));
  out.details.push_back(SweepPointDetail{k_count, alpha, "proposed",
                                         pso.best_powers.powers,
                                         demand_prop.f_bs, alloc_prop});

  // Both references transmit at full power; they differ in the split.
  const auto t1 = std::chrono::steady_clock::now();
  const PowerProfile full_power{
      std::vector<double>(scenario.bs_count(), scenario.p_max())};
  const GameEvaluation eval_ref = evaluate_game(scenario, full_power);
  const DemandProfile demand_ref = demand_profile(scenario, full_power);
  const AllocationResult alloc_ref1 =
      allocate_equal(demand_ref.f_bs, capacity, scenario.bs_count());
  const AllocationResult alloc_ref2 =
      allocate_capped_equal(demand_ref.f_bs, capacity, scenario.bs_count());
  const double wall_ref =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t1)
          .count();

  out.records.push_back(make_record(k_count, alpha, "ref1", eval_ref,
                                    demand_ref.f_bs, full_power.powers,
                                    alloc_ref1.sat, wall_ref));
  out.details.push_back(SweepPointDetail{k_count, alpha, "ref1",
                                         full_power.powers, demand_ref.f_bs,
                                         alloc_ref1});
  out.records.push_back(make_record(k_count, alpha, "ref2", eval_ref,
                                    demand_ref.f_bs, full_power.powers,
                                    alloc_ref2.sat, wall_ref));
  out.details.push_back(SweepPointDetail{k_count, alpha, "ref2",
                                         full_power.powers, demand_ref.f_bs,
                                         alloc_ref2});
  return out;
}

void sort_records(std::vector<SweepRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const SweepRecord& a, const SweepRecord& b) {
                     if (a.k_count != b.k_count) return a.k_count < b.k_count;
                     if (a.alpha != b.alpha) return a.alpha < b.alpha;
                     return a.solution < b.solution;
                   });
}

double json_number(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw std::invalid_argument("config: key '" + key + "' must be a number");
  }
  return value.get<double>();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!(zone_side > 0.0) || !std::isfinite(zone_side)) {
    throw std::invalid_argument("config: zone_side must be > 0");
  }
  if (bs_counts.empty()) {
    throw std::invalid_argument("config: bs_counts must not be empty");
  }
  if (std::set<std::size_t>(bs_counts.begin(), bs_counts.end()).size() !=
      bs_counts.size()) {
    throw std::invalid_argument("config: bs_counts must not repeat");
  }
  for (std::size_t k : bs_counts) {
    if (k == 0) throw std::invalid_argument("config: bs_counts must be >= 1");
  }
  if (alphas.empty()) {
    throw std::invalid_argument("config: alphas must not be empty");
  }
  if (std::set<double>(alphas.begin(), alphas.end()).size() != alphas.size()) {
    throw std::invalid_argument("config: alphas must not repeat");
  }
  for (double a : alphas) {
    if (!(a > 1.0) || !std::isfinite(a)) {
      throw std::invalid_argument("config: alphas must be > 1");
    }
  }
  // Scenario parameter ranges are enforced by the scenario constructor; a
  // cheap probe surfaces bad values with a clear message before the sweep.
  try {
    make_grid_scenario(1, zone_side, params, alphas.front());
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw std::invalid_argument("config: top level must be an object");
  }

  ExperimentConfig config;
  for (const auto& [key, value] : root.items()) {
    if (key == "zone_side") {
      config.zone_side = json_number(value, key);
    } else if (key == "bs_counts") {
      if (!value.is_array() || value.empty()) {
        throw std::invalid_argument("config: bs_counts must be a nonempty array");
      }
      config.bs_counts.clear();
      for (const auto& item : value) {
        if (!item.is_number_unsigned()) {
          throw std::invalid_argument(
              "config: bs_counts entries must be positive integers");
        }
        config.bs_counts.push_back(item.get<std::size_t>());
      }
    } else if (key == "alphas") {
      if (!value.is_array() || value.empty()) {
        throw std::invalid_argument("config: alphas must be a nonempty array");
      }
      config.alphas.clear();
      for (const auto& item : value) {
        config.alphas.push_back(json_number(item, key));
      }
    } else if (key == "rho") {
      config.params.rho = json_number(value, key);
    } else if (key == "f_ue") {
      config.params.f_ue = json_number(value, key);
    } else if (key == "mu") {
      config.params.mu = json_number(value, key);
    } else if (key == "t_db") {
      config.params.t_db = json_number(value, key);
    } else if (key == "sigma2") {
      config.params.sigma2 = json_number(value, key);
    } else if (key == "p_max") {
      config.params.p_max = json_number(value, key);
    } else if (key == "p_floor") {
      config.params.p_floor = json_number(value, key);
    } else if (key == "r_max") {
      config.params.r_max = json_number(value, key);
    } else if (key == "epsilon") {
      config.params.epsilon = json_number(value, key);
    } else if (key == "b") {
      config.params.b = json_number(value, key);
    } else if (key == "server_capacity") {
      config.params.server_capacity = json_number(value, key);
    } else if (key == "pso_particles") {
      if (!value.is_number_unsigned() || value.get<std::size_t>() == 0) {
        throw std::invalid_argument(
            "config: pso_particles must be a positive integer");
      }
      config.pso.n_particles = value.get<std::size_t>();
    } else if (key == "pso_iters") {
      if (!value.is_number_unsigned()) {
        throw std::invalid_argument(
            "config: pso_iters must be a nonnegative integer");
      }
      config.pso.max_iters = value.get<std::size_t>();
    } else if (key == "pso_inertia") {
      config.pso.inertia = json_number(value, key);
    } else if (key == "pso_c1") {
      config.pso.c1 = json_number(value, key);
    } else if (key == "pso_c2") {
      config.pso.c2 = json_number(value, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw std::invalid_argument("config: seed must be a nonnegative integer");
      }
      config.seed = value.get<std::uint64_t>();
    } else if (key == "output_dir") {
      if (!value.is_string()) {
        throw std::invalid_argument("config: output_dir must be a string");
      }
      config.output_dir = value.get<std::string>();
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot read '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return from_json_text(text.str());
}

std::string ExperimentConfig::to_json_text() const {
  json root;
  root["zone_side"] = zone_side;
  root["bs_counts"] = bs_counts;
  root["alphas"] = alphas;
  root["rho"] = params.rho;
  root["f_ue"] = params.f_ue;
  root["mu"] = params.mu;
  root["t_db"] = params.t_db;
  root["sigma2"] = params.sigma2;
  root["p_max"] = params.p_max;
  root["p_floor"] = params.p_floor;
  root["r_max"] = params.r_max;
  root["epsilon"] = params.epsilon;
  root["b"] = params.b;
  root["server_capacity"] = params.server_capacity;
  root["pso_particles"] = pso.n_particles;
  root["pso_iters"] = pso.max_iters;
  root["pso_inertia"] = pso.inertia;
  root["pso_c1"] = pso.c1;
  root["pso_c2"] = pso.c2;
  root["seed"] = seed;
  root["output_dir"] = output_dir;
  return root.dump(2) + "\n";
}

NetworkScenario make_grid_scenario(std::size_t k_count, double zone_side,
                                   const ScenarioParams& params,
                                   double alpha) {
  if (k_count == 0) {
    throw std::invalid_argument("make_grid_scenario: k_count must be >= 1");
  }
  if (!(zone_side > 0.0) || !std::isfinite(zone_side)) {
    throw std::invalid_argument("make_grid_scenario: zone_side must be > 0");
  }
  const std::size_t side = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(k_count))));
  const double cell = zone_side / static_cast<double>(side);
  std::vector<Point2> positions;
  positions.reserve(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    const std::size_t row = k / side;
    const std::size_t col = k % side;
    positions.push_back(Point2{(static_cast<double>(col) + 0.5) * cell,
                               (static_cast<double>(row) + 0.5) * cell});
  }
  const ChannelParams channel(params.mu, params.sigma2,
                              t_db_to_linear(params.t_db), alpha);
  return NetworkScenario(std::move(positions), channel, params.rho,
                         params.f_ue, params.r_max, params.p_max,
                         params.epsilon, params.b, params.server_capacity,
                         params.p_floor);
}

std::uint64_t sweep_point_seed(std::uint64_t master_seed, std::size_t k_count,
                               std::size_t alpha_index) {
  return mix_seed(mix_seed(master_seed, static_cast<std::uint64_t>(k_count)),
                  static_cast<std::uint64_t>(alpha_index));
}

SweepResult run_sweep(const ExperimentConfig& config, unsigned workers,
                      bool include_timing) {
  config.validate();

  struct Point {
    std::size_t k_count;
    std::size_t alpha_index;
  };
  std::vector<Point> points;
  for (std::size_t k : config.bs_counts) {
    for (std::size_t a = 0; a < config.alphas.size(); ++a) {
      points.push_back(Point{k, a});
    }
  }

  // Sweep points are independent; a worker pool fills one slot per point,
  // so the gathered output does not depend on scheduling.
  std::vector<PointOutput> outputs(points.size());
  const auto run_range = [&](std::atomic<std::size_t>& cursor) {
    for (std::size_t i = cursor.fetch_add(1); i < points.size();
         i = cursor.fetch_add(1)) {
      outputs[i] = run_point(config, points[i].k_count, points[i].alpha_index);
    }
  };
  if (workers <= 1 || points.size() <= 1) {
    std::atomic<std::size_t> cursor{0};
    run_range(cursor);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    const std::size_t n_threads =
        std::min<std::size_t>(workers, points.size());
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] { run_range(cursor); });
    }
    for (std::thread& th : pool) th.join();
  }

  SweepResult result;
  for (const PointOutput& out : outputs) {
    result.records.insert(result.records.end(), out.records.begin(),
                          out.records.end());
    result.details.insert(result.details.end(), out.details.begin(),
                          out.details.end());
  }
  sort_records(result.records);
  std::stable_sort(result.details.begin(), result.details.end(),
                   [](const SweepPointDetail& a, const SweepPointDetail& b) {
                     if (a.k_count != b.k_count) return a.k_count < b.k_count;
                     if (a.alpha != b.alpha) return a.alpha < b.alpha;
                     return a.solution < b.solution;
                   });

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw std::runtime_error("run_sweep: cannot create output directory '" +
                             config.output_dir + "': " + ec.message());
  }
  write_csv(result.records,
            (std::filesystem::path(config.output_dir) / "sweep.csv").string(),
            include_timing);
  return result;
}

void write_csv(const std::vector<SweepRecord>& records,
               const std::string& path, bool include_timing) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_csv: cannot write '" + path + "'");
  }
  out << "k_count,alpha,solution,avg_utility,avg_compute_efficiency,sat,"
         "avg_power,wall_time\n";
  for (const SweepRecord& rec : records) {
    out << rec.k_count << ',' << format_double(rec.alpha) << ','
        << rec.solution << ',' << format_double(rec.avg_utility) << ','
        << format_double(rec.avg_compute_efficiency) << ','
        << format_double(rec.sat) << ',' << format_double(rec.avg_power)
        << ',' << format_double(include_timing ? rec.wall_time : 0.0) << '\n';
  }
  if (!out.flush()) {
    throw std::runtime_error("write_csv: cannot write '" + path + "'");
  }
}

std::vector<std::string> emit_plot_data(
    const std::vector<SweepRecord>& records, double zone_side,
    const std::string& output_dir) {
  if (!(zone_side > 0.0) || !std::isfinite(zone_side)) {
    throw std::invalid_argument("emit_plot_data: zone_side must be > 0");
  }
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) {
    throw std::runtime_error("emit_plot_data: cannot create '" + output_dir +
                             "': " + ec.message());
  }

  const double zone_area = zone_side * zone_side;
  struct Metric {
    const char* name;
    double SweepRecord::* field;
  };
  const Metric metrics[] = {
      {"avg_utility", &SweepRecord::avg_utility},
      {"avg_compute_efficiency", &SweepRecord::avg_compute_efficiency},
      {"sat", &SweepRecord::sat},
  };

  // Distinct (alpha, solution) pairs in emission order.
  std::vector<std::pair<double, std::string>> series;
  for (const SweepRecord& rec : records) {
    const auto key = std::make_pair(rec.alpha, rec.solution);
    if (std::find(series.begin(), series.end(), key) == series.end()) {
      series.push_back(key);
    }
  }
  std::sort(series.begin(), series.end());

  std::vector<std::string> written;
  for (const Metric& metric : metrics) {
    for (const auto& [alpha, solution] : series) {
      std::vector<const SweepRecord*> rows;
      for (const SweepRecord& rec : records) {
        if (rec.alpha == alpha && rec.solution == solution) {
          rows.push_back(&rec);
        }
      }
      std::sort(rows.begin(), rows.end(),
                [](const SweepRecord* a, const SweepRecord* b) {
                  return a->k_count < b->k_count;  // density is monotone in K
                });
      const std::string name = std::string(metric.name) + "_alpha" +
                               format_alpha(alpha) + "_" + solution + ".csv";
      const std::string path =
          (std::filesystem::path(output_dir) / name).string();
      std::ofstream out(path);
      if (!out) {
        throw std::runtime_error("emit_plot_data: cannot write '" + path +
                                 "'");
      }
      out << "bs_density," << "k_count," << metric.name << "\n";
      for (const SweepRecord* rec : rows) {
        const double density = static_cast<double>(rec->k_count) / zone_area;
        out << format_double(density) << ',' << rec->k_count << ','
            << format_double(rec->*(metric.field)) << '\n';
      }
      if (!out.flush()) {
        throw std::runtime_error("emit_plot_data: cannot write '" + path +
                                 "'");
      }
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace mecsim
