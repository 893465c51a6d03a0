// sim — batch runner for the hawk-dove inference-evolution experiments.
//
//   sim list-scenarios
//   sim run <scenario> [--config FILE | --preset paper|desk] [--seed S]
//                      [--iterations K] [--out DIR] [--workers W]
//   sim replay <manifest> [--out DIR]

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdsim/experiments.hpp"

namespace {

hdsim::ScenarioSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw std::runtime_error("cannot open config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return hdsim::spec_from_json(nlohmann::json::parse(buffer.str()));
}

int run_and_emit(const hdsim::ScenarioSpec& spec) {
  const hdsim::ResultTable table = hdsim::run_scenario(spec);
  hdsim::emit_results(spec, table, spec.out_dir);
  std::cout << spec.scenario << ": " << table.rows.size() << " rows -> " << spec.out_dir
            << "/results.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic hawk-dove / transitive-inference experiment runner"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list-scenarios", "print the available scenarios");

  std::string scenario;
  std::string config_path;
  std::string preset = "desk";
  std::string out_dir;
  std::uint64_t seed = 0;
  int iterations = 0;
  int workers = 0;

  auto* run_cmd = app.add_subcommand("run", "run one scenario and write results");
  run_cmd->add_option("scenario", scenario, "scenario id (see list-scenarios)")->required();
  auto* config_opt = run_cmd->add_option("--config", config_path, "JSON spec file");
  run_cmd->add_option("--preset", preset, "built-in configuration: paper or desk")
      ->excludes(config_opt);
  run_cmd->add_option("--seed", seed, "master seed override");
  run_cmd->add_option("--iterations", iterations, "iteration count override");
  run_cmd->add_option("--out", out_dir, "output directory override");
  run_cmd->add_option("--workers", workers, "worker thread count override");

  std::string manifest_path;
  std::string replay_out;
  auto* replay_cmd = app.add_subcommand("replay", "re-run a scenario from its manifest");
  replay_cmd->add_option("manifest", manifest_path, "manifest.json of a previous run")
      ->required();
  replay_cmd->add_option("--out", replay_out, "output directory override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) {
      for (const auto& id : hdsim::scenario_ids()) {
        std::printf("%-26s %s\n", id.c_str(), hdsim::scenario_summary(id).c_str());
      }
      std::printf("\npresets: paper (full scale), desk (minutes); default desk\n");
      return 0;
    }

    if (run_cmd->parsed()) {
      hdsim::ScenarioSpec spec = config_path.empty()
                                     ? hdsim::scenario_preset(scenario, preset)
                                     : load_spec_file(config_path);
      if (!config_path.empty() && spec.scenario != scenario) {
        throw std::invalid_argument("config file is for scenario '" + spec.scenario +
                                    "', not '" + scenario + "'");
      }
      if (run_cmd->count("--seed")) spec.seed = seed;
      if (run_cmd->count("--iterations")) spec.iterations = iterations;
      if (run_cmd->count("--out")) spec.out_dir = out_dir;
      if (run_cmd->count("--workers")) spec.workers = workers;
      return run_and_emit(spec);
    }

    // replay
    hdsim::ScenarioSpec spec = hdsim::load_manifest(manifest_path);
    if (replay_cmd->count("--out")) spec.out_dir = replay_out;
    return run_and_emit(spec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
