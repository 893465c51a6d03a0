#include "hdsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hdsim/metrics.hpp"

namespace hdsim {

namespace {

enum class RunKind { Evolve, CiGeneration, Overlap };

struct ScenarioInfo {
  std::string id;
  std::string summary;
  RunKind kind;
  std::set<std::string> grid_keys;
};

const std::vector<ScenarioInfo>& registry() {
  static const std::vector<ScenarioInfo> infos = {
      {"evolve-mutation", "strategy evolution from an all-mixer start under two-locus mutation",
       RunKind::Evolve, {"n", "c", "v", "a"}},
      {"evolve-fixed-mix", "competition within a fixed strategy mix, no mutation",
       RunKind::Evolve, {"n", "c", "v"}},
      {"initial-proportion-sweep", "II versus one TI strategy across initial TI shares",
       RunKind::Evolve, {"strategy", "ti_share", "n", "c", "v"}},
      {"ess-probe", "stability of monomorphic starts under mutation", RunKind::Evolve,
       {"strategy", "c", "v", "n"}},
      {"ci-curve", "hierarchy-consistency curve over one generation of games",
       RunKind::CiGeneration, {"strategy", "c", "n"}},
      {"ci-vs-cost", "end-of-generation hierarchy consistency across fight costs",
       RunKind::CiGeneration, {"strategy", "c"}},
      {"ci-vs-groupsize", "end-of-generation hierarchy consistency across group sizes",
       RunKind::CiGeneration, {"strategy", "n"}},
      {"overlap-check", "expected all-player overlap of randomly drawn reference sets",
       RunKind::Overlap, {"w"}},
  };
  return infos;
}

const ScenarioInfo& find_info(const std::string& id) {
  for (const auto& info : registry()) {
    if (info.id == id) return info;
  }
  throw std::invalid_argument("scenario: unknown id '" + id + "' (see list-scenarios)");
}

std::string grid_value_text(const GridValue& value) {
  if (const auto* num = std::get_if<double>(&value)) return format_real(*num);
  return std::get<std::string>(value);
}

std::string cell_key_of(const GridCell& cell) {
  std::string key;
  for (const auto& [name, value] : cell) {
    if (!key.empty()) key += ';';
    key += name;
    key += '=';
    key += grid_value_text(value);
  }
  return key;
}

std::optional<double> cell_number(const GridCell& cell, const std::string& key) {
  const auto it = cell.find(key);
  if (it == cell.end()) return std::nullopt;
  const auto* num = std::get_if<double>(&it->second);
  if (!num) throw std::invalid_argument("grid." + key + ": expected a number");
  return *num;
}

int cell_integer(const std::string& key, double value) {
  if (std::floor(value) != value) {
    throw std::invalid_argument("grid." + key + ": expected an integer, got " +
                                format_real(value));
  }
  return static_cast<int>(value);
}

std::optional<std::string> cell_text(const GridCell& cell, const std::string& key) {
  const auto it = cell.find(key);
  if (it == cell.end()) return std::nullopt;
  const auto* text = std::get_if<std::string>(&it->second);
  if (!text) throw std::invalid_argument("grid." + key + ": expected a string");
  return *text;
}

/// Runs fn(0..count-1) across up to `workers` threads. Any exception is
/// rethrown on the caller thread after all workers join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int thread_count = std::min<int>(workers, static_cast<int>(count));
  pool.reserve(static_cast<std::size_t>(thread_count));
  for (int t = 0; t < thread_count; ++t) pool.emplace_back(body);
  for (auto& thread : pool) thread.join();
  if (first_error) std::rethrow_exception(first_error);
}

constexpr StrategyGenome kImmediate{1, 0};

}  // namespace

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& info : registry()) v.push_back(info.id);
    return v;
  }();
  return ids;
}

bool scenario_exists(const std::string& id) {
  const auto& ids = scenario_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::string scenario_summary(const std::string& id) { return find_info(id).summary; }

std::vector<GridCell> grid_cells(const Grid& grid) {
  std::vector<GridCell> cells{GridCell{}};
  for (const auto& [key, values] : grid) {
    if (values.empty()) {
      throw std::invalid_argument("grid." + key + ": empty value list");
    }
    std::vector<GridCell> extended;
    extended.reserve(cells.size() * values.size());
    for (const auto& cell : cells) {
      for (const auto& value : values) {
        GridCell next = cell;
        next[key] = value;
        extended.push_back(std::move(next));
      }
    }
    cells = std::move(extended);
  }
  return cells;
}

SimulationConfig resolve_cell_config(const ScenarioSpec& spec, const GridCell& cell) {
  SimulationConfig cfg = spec.base;
  if (const auto n = cell_number(cell, "n")) cfg.n = cell_integer("n", *n);
  if (const auto c = cell_number(cell, "c")) cfg.params.c = *c;
  if (const auto v = cell_number(cell, "v")) cfg.params.v = *v;
  if (const auto a = cell_number(cell, "a")) cfg.params.a = *a;

  if (const auto label = cell_text(cell, "strategy")) {
    const StrategyGenome genome = parse_genome(*label);
    if (const auto share = cell_number(cell, "ti_share")) {
      if (*share < 0.0 || *share > 100.0) {
        throw std::invalid_argument("grid.ti_share: must lie in [0, 100]");
      }
      const int k = static_cast<int>(std::llround(*share / 100.0 * cfg.n));
      cfg.initial_composition.clear();
      if (cfg.n - k > 0) cfg.initial_composition[kImmediate] = cfg.n - k;
      if (k > 0) cfg.initial_composition[genome] = k;
    } else {
      cfg.initial_composition = {{genome, cfg.n}};
    }
  } else if (cfg.n != spec.base.n) {
    // Rescale the base composition proportionally to the swept group size.
    std::map<StrategyGenome, double> weights;
    for (const auto& [genome, count] : spec.base.initial_composition) {
      weights[genome] = static_cast<double>(count);
    }
    cfg.initial_composition = apportion_largest_remainder(weights, cfg.n);
  }
  return cfg;
}

double overlap_closed_form(int n, int w) {
  return static_cast<double>(n) *
         std::pow(static_cast<double>(w) / static_cast<double>(n), n);
}

double overlap_check(int n, int w, std::int64_t iterations, Rng& rng) {
  if (n < 1) throw std::invalid_argument("overlap: n must be >= 1");
  if (w < 0 || w > n) throw std::invalid_argument("overlap: w must lie in [0, n]");
  if (iterations < 1) throw std::invalid_argument("overlap: iterations must be >= 1");

  std::vector<player_id_t> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> hits(static_cast<std::size_t>(n));
  std::int64_t total = 0;
  for (std::int64_t it = 0; it < iterations; ++it) {
    std::fill(hits.begin(), hits.end(), 0);
    for (int player = 0; player < n; ++player) {
      for (int k = 0; k < w; ++k) {  // partial Fisher-Yates draw of w ids
        const auto j = static_cast<std::size_t>(k) +
                       static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - k)));
        std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
        ++hits[static_cast<std::size_t>(pool[static_cast<std::size_t>(k)])];
      }
    }
    total += std::count(hits.begin(), hits.end(), n);
  }
  return static_cast<double>(total) / static_cast<double>(iterations);
}

namespace {

void validate_spec(const ScenarioSpec& spec, const ScenarioInfo& info,
                   const std::vector<GridCell>& cells) {
  if (spec.iterations < 1) throw std::invalid_argument("iterations: must be >= 1");
  if (spec.workers < 1) throw std::invalid_argument("workers: must be >= 1");
  if (spec.trajectory_stride < 0) throw std::invalid_argument("trajectory_stride: must be >= 0");
  if (spec.ci_stride < 0) throw std::invalid_argument("ci_stride: must be >= 0");
  if (!(spec.dominance_threshold > 0.0 && spec.dominance_threshold <= 1.0)) {
    throw std::invalid_argument("dominance_threshold: must lie in (0, 1]");
  }
  for (const auto& [key, values] : spec.grid) {
    if (!info.grid_keys.count(key)) {
      throw std::invalid_argument("grid." + key + ": not a swept parameter of scenario " +
                                  info.id);
    }
  }
  for (const auto& cell : cells) {
    try {
      if (info.kind == RunKind::Overlap) {
        const auto w = cell_number(cell, "w");
        if (!w) throw std::invalid_argument("grid.w: required for overlap-check");
        const int wi = cell_integer("w", *w);
        if (wi < 0 || wi > spec.base.n) {
          throw std::invalid_argument("grid.w: must lie in [0, n] (n = " +
                                      std::to_string(spec.base.n) + ")");
        }
      } else {
        resolve_cell_config(spec, cell).validate();
      }
    } catch (const std::invalid_argument& e) {
      const std::string key = cell_key_of(cell);
      throw std::invalid_argument(key.empty() ? std::string(e.what())
                                              : "cell {" + key + "}: " + e.what());
    }
  }
}

struct EvolveRun {
  std::vector<StrategyGenome> universe;
  std::vector<std::pair<long long, std::vector<double>>> freq_rows;
  std::vector<double> final_freq;
  long long final_generation = 0;
  DominanceResult dominance;
  double clamp_rate = 0.0;
};

EvolveRun do_evolve_run(SimulationConfig cfg, std::uint64_t seed, const ScenarioSpec& spec) {
  cfg.seed = seed;
  const SimulationResult sim = run_simulation(cfg);
  const auto& traj = sim.trajectory;

  EvolveRun run;
  run.universe = traj.genomes;
  run.final_generation = static_cast<long long>(traj.counts.size()) - 1;
  if (spec.trajectory_stride > 0) {
    for (long long gen = 0; gen <= run.final_generation; gen += spec.trajectory_stride) {
      run.freq_rows.emplace_back(gen, traj.frequencies(static_cast<std::size_t>(gen)));
    }
    if (run.final_generation % spec.trajectory_stride != 0) {
      run.freq_rows.emplace_back(run.final_generation,
                                 traj.frequencies(static_cast<std::size_t>(run.final_generation)));
    }
  }
  run.final_freq = traj.frequencies(static_cast<std::size_t>(run.final_generation));
  run.dominance = dominant_genome(traj, spec.dominance_threshold);
  run.clamp_rate = sim.player_generations == 0
                       ? 0.0
                       : static_cast<double>(sim.clamped_player_generations) /
                             static_cast<double>(sim.player_generations);
  return run;
}

struct CiRun {
  std::vector<std::pair<long long, double>> ci1;
};

CiRun do_ci_run(SimulationConfig cfg, std::uint64_t seed, const ScenarioSpec& spec) {
  cfg.seed = seed;
  Rng rng(seed);
  Population pop = Population::from_composition(cfg);
  const std::int64_t contests = cfg.contests_per_generation();

  CiRun run;
  if (spec.ci_stride > 0) {
    run.ci1.emplace_back(0, consistency_index(pop, cfg.params).ci1);
    const ContestHook hook = [&](const ContestEvent& event, const Population& p) {
      if (event.index % spec.ci_stride == 0 && event.index < contests) {
        run.ci1.emplace_back(event.index, consistency_index(p, cfg.params).ci1);
      }
    };
    run_generation(pop, cfg, rng, hook);
  } else {
    run_generation(pop, cfg, rng);
  }
  run.ci1.emplace_back(contests, consistency_index(pop, cfg.params).ci1);
  return run;
}

}  // namespace

ResultTable run_scenario(const ScenarioSpec& spec) {
  const ScenarioInfo& info = find_info(spec.scenario);
  const auto cells = grid_cells(spec.grid);
  validate_spec(spec, info, cells);

  ResultTable table;
  for (const auto& [name, values] : spec.grid) table.param_names.push_back(name);

  const auto cell_params = [&](const GridCell& cell) {
    std::vector<std::string> params;
    params.reserve(table.param_names.size());
    for (const auto& name : table.param_names) params.push_back(grid_value_text(cell.at(name)));
    return params;
  };
  const auto run_seed = [&](const GridCell& cell, std::uint64_t iteration) {
    return derive_run_seed(spec.seed, spec.scenario + "|" + cell_key_of(cell), iteration);
  };

  if (info.kind == RunKind::Overlap) {
    for (const auto& cell : cells) {
      const int w = cell_integer("w", *cell_number(cell, "w"));
      Rng rng(run_seed(cell, 0));
      const double mean = overlap_check(spec.base.n, w, spec.iterations, rng);
      const auto params = cell_params(cell);
      table.rows.push_back({spec.scenario, -1, spec.seed, -1, params, "-", "mean_intersection",
                            mean});
      table.rows.push_back({spec.scenario, -1, spec.seed, -1, params, "-", "closed_form",
                            overlap_closed_form(spec.base.n, w)});
    }
    return table;
  }

  const auto iterations = static_cast<std::size_t>(spec.iterations);
  const std::size_t total_runs = cells.size() * iterations;

  if (info.kind == RunKind::Evolve) {
    std::vector<std::vector<EvolveRun>> results(cells.size(), std::vector<EvolveRun>(iterations));
    parallel_for(total_runs, spec.workers, [&](std::size_t idx) {
      const std::size_t cell_idx = idx / iterations;
      const std::size_t iter = idx % iterations;
      const auto cfg = resolve_cell_config(spec, cells[cell_idx]);
      results[cell_idx][iter] = do_evolve_run(cfg, run_seed(cells[cell_idx], iter), spec);
    });

    for (std::size_t cell_idx = 0; cell_idx < cells.size(); ++cell_idx) {
      const auto params = cell_params(cells[cell_idx]);
      const auto& runs = results[cell_idx];
      const auto& universe = runs.front().universe;
      const long long final_gen = runs.front().final_generation;

      for (std::size_t iter = 0; iter < iterations; ++iter) {
        const auto& run = runs[iter];
        const auto iteration = static_cast<long long>(iter);
        const std::uint64_t seed = run_seed(cells[cell_idx], iter);
        for (const auto& [gen, freq] : run.freq_rows) {
          for (std::size_t g = 0; g < universe.size(); ++g) {
            table.rows.push_back({spec.scenario, iteration, seed, gen, params,
                                  genome_label(universe[g]), "frequency", freq[g]});
          }
        }
        for (std::size_t g = 0; g < universe.size(); ++g) {
          table.rows.push_back({spec.scenario, iteration, seed, final_gen, params,
                                genome_label(universe[g]), "final_frequency",
                                run.final_freq[g]});
        }
        table.rows.push_back({spec.scenario, iteration, seed, final_gen, params,
                              genome_label(run.dominance.genome), "dominant",
                              run.dominance.dominant ? 1.0 : 0.0});
        if (run.dominance.tie) {
          table.rows.push_back({spec.scenario, iteration, seed, final_gen, params,
                                genome_label(run.dominance.genome), "dominant_tie", 1.0});
        }
        table.rows.push_back({spec.scenario, iteration, seed, -1, params, "-", "clamp_rate",
                              run.clamp_rate});
      }

      // Per-cell aggregates: raw means over every run, dominance shares over
      // converged runs only.
      std::vector<double> mean_freq(universe.size(), 0.0);
      std::map<StrategyGenome, int> wins;
      int converged = 0;
      for (const auto& run : runs) {
        for (std::size_t g = 0; g < universe.size(); ++g) mean_freq[g] += run.final_freq[g];
        if (run.dominance.dominant) {
          ++converged;
          ++wins[run.dominance.genome];
        }
      }
      for (std::size_t g = 0; g < universe.size(); ++g) {
        mean_freq[g] /= static_cast<double>(iterations);
        table.rows.push_back({spec.scenario, -1, spec.seed, final_gen, params,
                              genome_label(universe[g]), "mean_final_frequency", mean_freq[g]});
      }
      table.rows.push_back({spec.scenario, -1, spec.seed, final_gen, params, "-",
                            "converged_runs", static_cast<double>(converged)});
      for (std::size_t g = 0; g < universe.size(); ++g) {
        const auto it = wins.find(universe[g]);
        const double share =
            (converged == 0 || it == wins.end())
                ? 0.0
                : static_cast<double>(it->second) / static_cast<double>(converged);
        table.rows.push_back({spec.scenario, -1, spec.seed, final_gen, params,
                              genome_label(universe[g]), "dominance_share", share});
      }
    }
    return table;
  }

  // CiGeneration
  std::vector<std::vector<CiRun>> results(cells.size(), std::vector<CiRun>(iterations));
  parallel_for(total_runs, spec.workers, [&](std::size_t idx) {
    const std::size_t cell_idx = idx / iterations;
    const std::size_t iter = idx % iterations;
    const auto cfg = resolve_cell_config(spec, cells[cell_idx]);
    results[cell_idx][iter] = do_ci_run(cfg, run_seed(cells[cell_idx], iter), spec);
  });

  for (std::size_t cell_idx = 0; cell_idx < cells.size(); ++cell_idx) {
    const auto params = cell_params(cells[cell_idx]);
    const auto& runs = results[cell_idx];
    for (std::size_t iter = 0; iter < iterations; ++iter) {
      const std::uint64_t seed = run_seed(cells[cell_idx], iter);
      for (const auto& [step, value] : runs[iter].ci1) {
        table.rows.push_back({spec.scenario, static_cast<long long>(iter), seed, step, params,
                              "-", "ci1", value});
      }
    }
    const auto& steps = runs.front().ci1;
    for (std::size_t s = 0; s < steps.size(); ++s) {
      double mean = 0.0;
      for (const auto& run : runs) mean += run.ci1[s].second;
      mean /= static_cast<double>(iterations);
      table.rows.push_back({spec.scenario, -1, spec.seed, steps[s].first, params, "-",
                            "mean_ci1", mean});
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// JSON round-trip
// ---------------------------------------------------------------------------

namespace {

nlohmann::json config_to_json(const SimulationConfig& cfg) {
  nlohmann::json j;
  j["n"] = cfg.n;
  j["np"] = cfg.np;
  j["generations"] = cfg.generations;
  j["mu"] = cfg.mu;
  j["mc"] = cfg.mc ? nlohmann::json(*cfg.mc) : nlohmann::json("unlimited");
  j["v"] = cfg.params.v;
  j["c"] = cfg.params.c;
  j["a"] = cfg.params.a;
  j["mutation_alphabet"] = cfg.mutation_alphabet;
  j["selection"] = cfg.selection == SelectionMode::Stochastic ? "stochastic" : "deterministic";
  nlohmann::json comp = nlohmann::json::object();
  for (const auto& [genome, count] : cfg.initial_composition) {
    comp[genome_label(genome)] = count;
  }
  j["initial_composition"] = comp;
  return j;
}

SimulationConfig config_from_json(const nlohmann::json& j) {
  SimulationConfig cfg;
  cfg.n = j.at("n").get<int>();
  cfg.np = j.at("np").get<double>();
  cfg.generations = j.at("generations").get<int>();
  cfg.mu = j.at("mu").get<double>();
  const auto& mc = j.at("mc");
  if (mc.is_string()) {
    if (mc.get<std::string>() != "unlimited") {
      throw std::invalid_argument("base.mc: expected a count or \"unlimited\"");
    }
    cfg.mc = std::nullopt;
  } else {
    cfg.mc = mc.get<std::size_t>();
  }
  cfg.params.v = j.at("v").get<double>();
  cfg.params.c = j.at("c").get<double>();
  cfg.params.a = j.value("a", 1.0);
  if (j.contains("mutation_alphabet")) {
    cfg.mutation_alphabet = j.at("mutation_alphabet").get<std::vector<int>>();
  }
  const std::string selection = j.value("selection", "deterministic");
  if (selection == "stochastic") {
    cfg.selection = SelectionMode::Stochastic;
  } else if (selection == "deterministic") {
    cfg.selection = SelectionMode::Deterministic;
  } else {
    throw std::invalid_argument("base.selection: expected deterministic or stochastic");
  }
  cfg.initial_composition.clear();
  for (const auto& [label, count] : j.at("initial_composition").items()) {
    cfg.initial_composition[parse_genome(label)] = count.get<int>();
  }
  return cfg;
}

}  // namespace

nlohmann::json spec_to_json(const ScenarioSpec& spec) {
  nlohmann::json j;
  j["scenario"] = spec.scenario;
  j["base"] = config_to_json(spec.base);
  nlohmann::json grid = nlohmann::json::object();
  for (const auto& [key, values] : spec.grid) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& value : values) {
      if (const auto* num = std::get_if<double>(&value)) {
        list.push_back(*num);
      } else {
        list.push_back(std::get<std::string>(value));
      }
    }
    grid[key] = list;
  }
  j["grid"] = grid;
  j["iterations"] = spec.iterations;
  j["seed"] = spec.seed;
  j["out"] = spec.out_dir;
  j["workers"] = spec.workers;
  j["trajectory_stride"] = spec.trajectory_stride;
  j["ci_stride"] = spec.ci_stride;
  j["dominance_threshold"] = spec.dominance_threshold;
  return j;
}

ScenarioSpec spec_from_json(const nlohmann::json& j) {
  ScenarioSpec spec;
  spec.scenario = j.at("scenario").get<std::string>();
  spec.base = config_from_json(j.at("base"));
  if (j.contains("grid")) {
    for (const auto& [key, values] : j.at("grid").items()) {
      if (!values.is_array()) throw std::invalid_argument("grid." + key + ": expected an array");
      std::vector<GridValue> list;
      for (const auto& value : values) {
        if (value.is_number()) {
          list.emplace_back(value.get<double>());
        } else if (value.is_string()) {
          list.emplace_back(value.get<std::string>());
        } else {
          throw std::invalid_argument("grid." + key + ": values must be numbers or strings");
        }
      }
      spec.grid[key] = std::move(list);
    }
  }
  spec.iterations = j.value("iterations", 1);
  spec.seed = j.value("seed", std::uint64_t{1});
  spec.out_dir = j.value("out", std::string("results"));
  spec.workers = j.value("workers", 1);
  spec.trajectory_stride = j.value("trajectory_stride", std::int64_t{0});
  spec.ci_stride = j.value("ci_stride", std::int64_t{0});
  spec.dominance_threshold = j.value("dominance_threshold", 0.9);
  return spec;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

namespace {

SimulationConfig preset_base(int n, int generations, double mu,
                             std::map<StrategyGenome, int> composition) {
  SimulationConfig cfg;
  cfg.n = n;
  cfg.np = 2.0;
  cfg.generations = generations;
  cfg.mu = mu;
  cfg.mc = 14;
  cfg.params = GameParams{4.0, 30.0, 1.0};
  cfg.initial_composition = std::move(composition);
  return cfg;
}

std::vector<GridValue> labels(std::initializer_list<const char*> names) {
  std::vector<GridValue> values;
  for (const char* name : names) values.emplace_back(std::string(name));
  return values;
}

std::vector<GridValue> numbers(std::initializer_list<double> list) {
  std::vector<GridValue> values;
  for (const double v : list) values.emplace_back(v);
  return values;
}

}  // namespace

ScenarioSpec scenario_preset(const std::string& id, const std::string& preset) {
  const bool paper = preset == "paper";
  if (!paper && preset != "desk") {
    throw std::invalid_argument("preset: expected 'paper' or 'desk', got '" + preset + "'");
  }
  find_info(id);

  ScenarioSpec spec;
  spec.scenario = id;
  spec.seed = 1;
  spec.out_dir = "results/" + id;

  if (id == "evolve-mutation") {
    spec.base = preset_base(20, paper ? 10000 : 300, 0.001, {{{0, 0}, 20}});
    if (paper) spec.grid["n"] = numbers({10, 20, 30, 40, 50});
    spec.iterations = paper ? 50 : 5;
    spec.trajectory_stride = paper ? 100 : 25;
  } else if (id == "evolve-fixed-mix") {
    std::map<StrategyGenome, int> mix;
    for (const char* label : {"M", "II", "TI2-2", "TI4-4", "TI6-6", "TI8-8", "TI35-35"}) {
      mix[parse_genome(label)] = 5;
    }
    spec.base = preset_base(35, 500, 0.0, std::move(mix));
    spec.iterations = paper ? 50 : 20;
  } else if (id == "initial-proportion-sweep") {
    spec.base = preset_base(30, 500, 0.0, {{kImmediate, 30}});
    spec.grid["strategy"] =
        paper ? labels({"TI2-2", "TI4-4", "TI6-6", "TI8-8"}) : labels({"TI8-8"});
    spec.grid["ti_share"] = numbers({10, 30, 50, 70, 90});
    spec.iterations = paper ? 50 : 20;
  } else if (id == "ess-probe") {
    spec.base = preset_base(40, paper ? 10000 : 2000, 0.001, {{{0, 0}, 40}});
    spec.grid["strategy"] = paper ? labels({"II", "TI4-0", "TI4-4", "TI8-0", "TI8-8"})
                                  : labels({"II", "TI4-4", "TI8-0", "TI8-8"});
    spec.iterations = paper ? 50 : 10;
  } else if (id == "ci-curve") {
    spec.base = preset_base(16, 1, 0.0, {{{0, 0}, 16}});
    spec.grid["strategy"] = labels({"II", "TI2-2", "TI4-4", "TI6-6", "TI8-8", "TI16-16"});
    spec.iterations = paper ? 100 : 20;
    spec.ci_stride = paper ? 1 : 10;
  } else if (id == "ci-vs-cost") {
    spec.base = preset_base(16, 1, 0.0, {{{0, 0}, 16}});
    spec.grid["strategy"] = paper ? labels({"TI8-0", "TI8-2", "TI8-4", "TI8-6", "TI8-8"})
                                  : labels({"TI8-0", "TI8-8"});
    spec.grid["c"] = paper ? numbers({5, 12, 30}) : numbers({5, 30});
    spec.iterations = paper ? 100 : 20;
  } else if (id == "ci-vs-groupsize") {
    spec.base = preset_base(15, 1, 0.0, {{{0, 0}, 15}});
    spec.grid["strategy"] = paper ? labels({"TI2-2", "TI4-4", "TI6-6", "TI8-8"})
                                  : labels({"TI2-2", "TI8-8"});
    spec.grid["n"] = paper ? numbers({15, 30, 50}) : numbers({15, 30});
    spec.iterations = paper ? 50 : 10;
  } else if (id == "overlap-check") {
    spec.base = preset_base(10, 0, 0.0, {{{0, 0}, 10}});
    spec.grid["w"] = numbers({7, 8, 9, 10});
    spec.iterations = 100000;
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

void emit_results(const ScenarioSpec& spec, const ResultTable& table,
                  const std::filesystem::path& dir) {
  if (table.rows.empty()) throw std::invalid_argument("emit_results: empty result table");

  nlohmann::json manifest;
  manifest["format"] = "hdsim-manifest-v1";
  manifest["seed_scheme"] =
      "run_seed = splitmix64(splitmix64(master ^ splitmix64(fnv1a64(scenario|cell))) + iteration)";
  manifest["spec"] = spec_to_json(spec);

  const ScenarioInfo& info = find_info(spec.scenario);
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& cell : grid_cells(spec.grid)) {
    const std::string key = cell_key_of(cell);
    const int per_cell = info.kind == RunKind::Overlap ? 1 : spec.iterations;
    for (int iter = 0; iter < per_cell; ++iter) {
      nlohmann::json entry;
      entry["cell"] = key;
      entry["iteration"] = iter;
      entry["seed"] = derive_run_seed(spec.seed, spec.scenario + "|" + key,
                                      static_cast<std::uint64_t>(iter));
      seeds.push_back(entry);
    }
  }
  manifest["run_seeds"] = seeds;

  write_text_file(dir / "results.csv", to_csv(table));
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

ScenarioSpec load_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in.is_open()) {
    throw std::runtime_error("cannot open manifest: " + manifest_path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json manifest = nlohmann::json::parse(buffer.str());
  if (manifest.value("format", "") != "hdsim-manifest-v1") {
    throw std::runtime_error("manifest " + manifest_path.string() +
                             ": unrecognized format field");
  }
  return spec_from_json(manifest.at("spec"));
}

}  // namespace hdsim
