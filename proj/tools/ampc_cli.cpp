/******************************************************************************
 * Copyright 2026 The AMPC Toolkit Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ampc/config.hpp"
#include "ampc/io.hpp"
#include "ampc/lookup_table.hpp"
#include "ampc/pso.hpp"
#include "ampc/scenario.hpp"
#include "ampc/simulate.hpp"
#include "ampc/tuning.hpp"

namespace fs = std::filesystem;

namespace {

ampc::SimSetup setup_from_config(const ampc::Config& cfg) {
  ampc::SimSetup setup;
  setup.vehicle = ampc::vehicle_from_config(cfg);
  setup.pacejka = ampc::pacejka_from_config(cfg);
  setup.mpc = ampc::mpc_from_config(cfg);
  setup.pp_lookahead = ampc::pp_lookahead_from_config(cfg);
  return setup;
}

int run_simulate(const std::string& scenario_path, const std::string& controller,
                 const std::string& table_path, const std::string& config_path,
                 const std::string& out_dir) {
  const ampc::Config cfg = ampc::Config::from_file(config_path);
  const ampc::SimSetup setup = setup_from_config(cfg);
  const ampc::Scenario scenario = ampc::load_scenario(scenario_path);
  const ampc::ControllerKind kind = ampc::controller_kind_from_string(controller);

  ampc::LookupTable table;
  const ampc::LookupTable* table_ptr = nullptr;
  if (kind == ampc::ControllerKind::ampc) {
    if (table_path.empty()) {
      std::cerr << "error: --table is required for the adaptive controller\n";
      return 1;
    }
    table = ampc::load_table(table_path);
    const std::string expected = ampc::vehicle_config_hash(setup.vehicle, setup.pacejka);
    if (!table.vehicle_hash.empty() && table.vehicle_hash != expected) {
      std::cerr << "warning: table was tuned for a different vehicle configuration ("
                << table.vehicle_hash << " != " << expected << ")\n";
    }
    table_ptr = &table;
  }

  const ampc::SimResult result = ampc::run_scenario(scenario, kind, table_ptr, setup);

  fs::create_directories(out_dir);
  std::ostringstream trace;
  ampc::write_trace_csv(trace, result);
  ampc::write_file((fs::path(out_dir) / "trace.csv").string(), trace.str());
  std::ostringstream summary;
  ampc::write_summary_csv(summary, result);
  ampc::write_file((fs::path(out_dir) / "summary.csv").string(), summary.str());

  std::cout << scenario.name << " [" << ampc::to_string(kind)
            << "] mse=" << ampc::format_number(result.mse)
            << " max_abs_error=" << ampc::format_number(result.max_abs_error)
            << " violations=" << result.constraint_violations
            << " diverged=" << (result.diverged ? 1 : 0) << "\n";
  return 0;
}

std::string point_label(double speed, double offset) {
  std::ostringstream name;
  name << "v" << ampc::format_number(speed) << "_y" << ampc::format_number(offset);
  std::string label = name.str();
  std::replace(label.begin(), label.end(), '.', 'p');
  std::replace(label.begin(), label.end(), '-', 'm');
  return label;
}

int run_tune(const std::string& grid_path, const std::string& config_path,
             const std::string& out_path, std::uint64_t seed, const std::string& stamp) {
  const ampc::Config cfg = ampc::Config::from_file(config_path);
  const ampc::SimSetup setup = setup_from_config(cfg);
  ampc::PsoHyper hyper = ampc::pso_from_config(cfg);

  const ampc::Config grid = ampc::Config::from_file(grid_path);
  const std::vector<double> speeds =
      grid.list("grid.speeds", {3, 6, 9, 12, 15, 18, 21, 24, 27});
  const std::vector<double> offsets = grid.list("grid.offsets", {0, 2, 4, 8, 15});

  ampc::TuneBounds bounds = ampc::TuneBounds::defaults();
  const auto bound_pair = [&](const std::string& key, int dim) {
    if (!grid.has(key)) return;
    const std::vector<double> pair = grid.list(key);
    if (pair.size() != 2 || !(pair[1] > pair[0])) {
      throw std::runtime_error("grid key `" + key + "` must be `lo, hi` with hi > lo");
    }
    bounds.bounds.lower[dim] = pair[0];
    bounds.bounds.upper[dim] = pair[1];
  };
  bound_pair("bounds.np", 0);
  bound_pair("bounds.nc", 1);
  bound_pair("bounds.q_y", 2);
  bound_pair("bounds.r", 3);
  bound_pair("bounds.n", 4);
  bound_pair("bounds.alpha", 5);

  ampc::StepManeuver maneuver;
  maneuver.duration = grid.number("maneuver.duration", maneuver.duration);
  maneuver.step_time = grid.number("maneuver.step_time", maneuver.step_time);
  maneuver.ramp_length = grid.number("maneuver.ramp", maneuver.ramp_length);
  maneuver.min_offset = grid.number("maneuver.min_offset", maneuver.min_offset);

  ampc::LookupTable table;
  table.speed_breakpoints = speeds;
  table.offset_breakpoints = offsets;
  table.vehicle_hash = ampc::vehicle_config_hash(setup.vehicle, setup.pacejka);

  const fs::path out(out_path);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());

  std::uint64_t point_index = 0;
  for (double speed : speeds) {
    for (double offset : offsets) {
      ampc::PsoHyper point_hyper = hyper;
      point_hyper.seed = seed * 1000003ull + point_index;
      const ampc::TuneResult tuned =
          ampc::tune_mpc(speed, offset, bounds, point_hyper, maneuver, setup);

      ampc::TableEntry entry;
      entry.key = {speed, offset};
      entry.params = tuned.params;
      entry.fitness = tuned.fitness;
      entry.seed = point_hyper.seed;
      entry.timestamp = stamp;
      table.entries.push_back(entry);

      std::ostringstream conv;
      ampc::write_convergence_csv(conv, tuned.swarm);
      const fs::path conv_path =
          out.parent_path() / ("convergence_" + point_label(speed, offset) + ".csv");
      ampc::write_file(conv_path.string(), conv.str());

      std::cout << "tuned (" << speed << ", " << offset
                << ") mse=" << ampc::format_number(tuned.fitness)
                << " np=" << tuned.params.pred_horizon << " nc=" << tuned.params.ctrl_horizon
                << " q_y=" << ampc::format_number(tuned.params.weight_track)
                << " r=" << ampc::format_number(tuned.params.weight_ctrl)
                << " n=" << tuned.params.laguerre_terms
                << " alpha=" << ampc::format_number(tuned.params.laguerre_scale) << "\n";
      ++point_index;
    }
  }

  ampc::save_table(table, out_path);
  std::cout << "wrote " << table.entries.size() << " entries to " << out_path << "\n";
  return 0;
}

int run_pso_bench(const std::string& variant, int dims, int gens, int seeds, int population,
                  std::uint64_t base_seed, const std::string& out_dir) {
  ampc::PsoHyper hyper;
  hyper.variant = ampc::pso_variant_from_string(variant);
  hyper.generations = gens;
  hyper.population = population;

  ampc::SearchBounds bounds;
  bounds.lower = Eigen::VectorXd::Constant(dims, -10.0);
  bounds.upper = Eigen::VectorXd::Constant(dims, 10.0);

  fs::create_directories(out_dir);
  std::vector<std::vector<double>> histories;
  for (int k = 0; k < seeds; ++k) {
    hyper.seed = base_seed + static_cast<std::uint64_t>(k);
    const ampc::SwarmResult result = ampc::pso_run(ampc::sphere, bounds, hyper);
    histories.push_back(result.fitness_history);
    std::ostringstream conv;
    ampc::write_convergence_csv(conv, result);
    ampc::write_file((fs::path(out_dir) / ("seed_" + std::to_string(k) + ".csv")).string(),
                     conv.str());
  }

  std::ostringstream median_csv;
  median_csv << "generation,median_best_fitness\n";
  double final_median = 0;
  for (int g = 0; g <= gens; ++g) {
    std::vector<double> column;
    column.reserve(histories.size());
    for (const auto& h : histories) column.push_back(h[static_cast<std::size_t>(g)]);
    std::sort(column.begin(), column.end());
    const std::size_t n = column.size();
    const double median =
        n % 2 == 1 ? column[n / 2] : 0.5 * (column[n / 2 - 1] + column[n / 2]);
    median_csv << g << ',' << ampc::format_number(median) << '\n';
    if (g == gens) final_median = median;
  }
  ampc::write_file((fs::path(out_dir) / "median.csv").string(), median_csv.str());

  std::cout << variant << " d=" << dims << " gens=" << gens << " seeds=" << seeds
            << " final_median=" << ampc::format_number(final_median) << "\n";
  return 0;
}

int run_validate(const std::string& table_path) {
  try {
    const ampc::LookupTable table = ampc::load_table(table_path);
    std::cout << "ok: " << table.entries.size() << " entries, schema_version "
              << ampc::kTableSchemaVersion << "\n";
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "invalid table: " << err.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive Laguerre-MPC path-tracking toolkit"};
  app.require_subcommand(1);

  std::string scenario_path, controller = "mpc", table_path, config_path, out_dir = "out";
  auto* simulate = app.add_subcommand("simulate", "Run one closed-loop scenario");
  simulate->add_option("--scenario", scenario_path, "Scenario config file")->required();
  simulate->add_option("--controller", controller, "ampc|mpc|pp")->required();
  simulate->add_option("--table", table_path, "Lookup table (required for ampc)");
  simulate->add_option("--config", config_path, "Vehicle/controller config file")->required();
  simulate->add_option("--out", out_dir, "Output directory")->required();

  std::string grid_path, tune_out = "table.json", stamp;
  std::uint64_t seed = 1;
  auto* tune = app.add_subcommand("tune", "Optimize controller parameters over a grid");
  tune->add_option("--grid", grid_path, "Grid/bounds config file")->required();
  tune->add_option("--config", config_path, "Vehicle/controller config file")->required();
  tune->add_option("--out", tune_out, "Lookup table output path")->required();
  tune->add_option("--seed", seed, "Base random seed");
  tune->add_option("--stamp", stamp, "Provenance stamp stored with each entry");

  std::string variant = "improved";
  int dims = 10, gens = 41, n_seeds = 20, population = 20;
  auto* bench = app.add_subcommand("pso-bench", "Sphere-function convergence benchmark");
  bench->add_option("--variant", variant, "classic|linear|damped|improved")->required();
  bench->add_option("--dims", dims, "Problem dimension");
  bench->add_option("--gens", gens, "Generations");
  bench->add_option("--seeds", n_seeds, "Number of seeds");
  bench->add_option("--pop", population, "Swarm size");
  bench->add_option("--seed", seed, "Base random seed");
  bench->add_option("--out", out_dir, "Output directory")->required();

  auto* validate = app.add_subcommand("validate", "Check a lookup table document");
  validate->add_option("--table", table_path, "Lookup table path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      return run_simulate(scenario_path, controller, table_path, config_path, out_dir);
    }
    if (tune->parsed()) {
      return run_tune(grid_path, config_path, tune_out, seed, stamp);
    }
    if (bench->parsed()) {
      return run_pso_bench(variant, dims, gens, n_seeds, population, seed, out_dir);
    }
    if (validate->parsed()) {
      return run_validate(table_path);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
