#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hdsim/engine.hpp"
#include "hdsim/results.hpp"

namespace hdsim {

/// A swept value: a number (n, c, v, ti_share, w, ...) or a strategy label.
using GridValue = std::variant<double, std::string>;

/// Swept parameter name -> values. Cells are the cartesian product, keys in
/// ascending name order, first key outermost.
using Grid = std::map<std::string, std::vector<GridValue>>;
using GridCell = std::map<std::string, GridValue>;

/// A complete, reproducible experiment description.
struct ScenarioSpec {
  std::string scenario;
  SimulationConfig base;
  Grid grid;
  int iterations = 1;
  std::uint64_t seed = 1;        // master seed; per-run seeds derive from it
  std::string out_dir = "results";
  int workers = 1;
  std::int64_t trajectory_stride = 0;  // evolve scenarios: emit per-generation
                                       // frequency rows every this many
                                       // generations (0 = final only)
  std::int64_t ci_stride = 0;          // ci scenarios: snapshot every this
                                       // many contests (0 = end of
                                       // generation only)
  double dominance_threshold = 0.9;    // final frequency that counts as a win
};

/// Registered scenario ids, in listing order.
const std::vector<std::string>& scenario_ids();
bool scenario_exists(const std::string& id);
std::string scenario_summary(const std::string& id);

/// Built-in configurations: "paper" (full scale) or "desk" (minutes).
ScenarioSpec scenario_preset(const std::string& id, const std::string& preset);

/// JSON round-trip of a spec; the same schema is used for config files and
/// for the manifest's embedded spec.
ScenarioSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ScenarioSpec& spec);

/// Validates the spec and every grid cell (throws std::invalid_argument with
/// the offending field), then executes iterations x cells as independent
/// seeded runs — across `workers` threads when asked — and assembles per-run
/// rows plus per-cell aggregates. Output is identical for any worker count.
ResultTable run_scenario(const ScenarioSpec& spec);

/// The resolved per-cell simulation configuration (exposed for tests).
SimulationConfig resolve_cell_config(const ScenarioSpec& spec, const GridCell& cell);

/// Grid cells of a spec in canonical order.
std::vector<GridCell> grid_cells(const Grid& grid);

/// Monte Carlo mean of the all-players intersection of n independently drawn
/// w-member reference sets (no shared members) in a group of n.
double overlap_check(int n, int w, std::int64_t iterations, Rng& rng);

/// Closed form of the same expectation: n * (w/n)^n.
double overlap_closed_form(int n, int w);

/// Writes <dir>/results.csv and <dir>/manifest.json. The manifest captures
/// the fully resolved spec plus every derived run seed; re-running it
/// reproduces the files byte for byte.
void emit_results(const ScenarioSpec& spec, const ResultTable& table,
                  const std::filesystem::path& dir);

/// Reads the spec back out of a manifest written by emit_results.
ScenarioSpec load_manifest(const std::filesystem::path& manifest_path);

}  // namespace hdsim
