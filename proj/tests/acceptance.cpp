// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are fixed here, not tuned at run time.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hdsim/experiments.hpp"
#include "hdsim/metrics.hpp"

using namespace hdsim;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kMasterSeed = 20240811;

int g_failed = 0;

void report(int id, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
  std::printf("[%s] criterion %2d  %-30s (%6.1fs)  %s\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), seconds, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

template <class Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, name, pass, seconds, detail);
}

int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 2u, 4u));
}

struct Sample {
  double mean = 0.0;
  double se = 0.0;
};

Sample summarize(const std::vector<double>& xs) {
  Sample s;
  const auto n = static_cast<double>(xs.size());
  for (const double x : xs) s.mean += x;
  s.mean /= n;
  double var = 0.0;
  for (const double x : xs) var += (x - s.mean) * (x - s.mean);
  var /= (n - 1.0);
  s.se = std::sqrt(var / n);
  return s;
}

double gap_se(const Sample& a, const Sample& b) {
  return std::sqrt(a.se * a.se + b.se * b.se);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

/// Mean end-of-generation CI1 over `iterations` monomorphic one-generation
/// runs of `label` players.
Sample end_of_generation_ci1(const std::string& label, int n,
                             std::optional<std::size_t> mc, double cost, int iterations) {
  SimulationConfig cfg;
  cfg.n = n;
  cfg.np = 2.0;
  cfg.generations = 1;
  cfg.mu = 0.0;
  cfg.mc = mc;
  cfg.params = GameParams{4.0, cost, 1.0};
  cfg.initial_composition = {{parse_genome(label), n}};

  std::vector<double> values(static_cast<std::size_t>(iterations));
  for (int iter = 0; iter < iterations; ++iter) {
    const std::uint64_t seed =
        derive_run_seed(kMasterSeed, "acceptance-ci|" + label + "|n=" + std::to_string(n),
                        static_cast<std::uint64_t>(iter));
    Rng rng(seed);
    Population pop = Population::from_composition(cfg);
    run_generation(pop, cfg, rng);
    values[static_cast<std::size_t>(iter)] = consistency_index(pop, cfg.params).ci1;
  }
  return summarize(values);
}

// --------------------------------------------------------------------------
// Criterion 2's independent oracle: a from-scratch evaluation of the
// transitive rule over a plain record list. Kept free of MemoryStore and the
// production inference path on purpose.
// --------------------------------------------------------------------------

struct RawRecord {
  player_id_t first;
  player_id_t second;
  player_id_t winner;
};

int raw_sign(long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int oracle_transitive(const std::vector<RawRecord>& records, player_id_t self,
                      player_id_t opponent, const std::vector<player_id_t>& refs) {
  const auto net = [&](player_id_t of, player_id_t versus) {
    int sum = 0;
    for (const auto& r : records) {
      const bool between =
          (r.first == of && r.second == versus) || (r.first == versus && r.second == of);
      if (between) sum += (r.winner == of) ? 1 : -1;
    }
    return sum;
  };
  const auto any_between = [&](player_id_t a, player_id_t b) {
    for (const auto& r : records) {
      if ((r.first == a && r.second == b) || (r.first == b && r.second == a)) return true;
    }
    return false;
  };

  long long sum = 0;
  int n = 0;
  for (const player_id_t mid : refs) {
    if (mid == self || mid == opponent) continue;
    if (!any_between(self, mid) || !any_between(opponent, mid)) continue;
    sum += raw_sign(raw_sign(net(opponent, mid)) + raw_sign(net(mid, self)));
    ++n;
  }
  return n == 0 ? 0 : raw_sign(sum);
}

// --------------------------------------------------------------------------
// Criteria
// --------------------------------------------------------------------------

bool crit1_win_probability(std::string& detail) {
  const GameParams params{4, 30, 1};
  for (double x = 0.0; x < 10.0; x += 0.37) {
    if (win_probability(Rhp{x}, Rhp{x}, params) != 0.5) {
      detail = "theta(x,x) != 0.5 at x=" + fmt(x);
      return false;
    }
  }
  Rng rng(kMasterSeed);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Rhp a{rng.uniform_below(10.0)}, b{rng.uniform_below(10.0)};
    worst = std::max(worst, std::abs(win_probability(a, b, params) +
                                     win_probability(b, a, params) - 1.0));
  }
  if (worst > 1e-12) {
    detail = "antisymmetry residual " + fmt(worst);
    return false;
  }
  for (int i = 0; i < 10000; ++i) {
    double x1 = rng.uniform_below(10.0), x2 = rng.uniform_below(10.0);
    if (std::abs(x1 - x2) < 1e-9) continue;
    if (x1 > x2) std::swap(x1, x2);
    const Rhp b{rng.uniform_below(10.0)};
    if (!(win_probability(Rhp{x1}, b, params) < win_probability(Rhp{x2}, b, params))) {
      detail = "monotonicity broken";
      return false;
    }
  }
  detail = "symmetry exact, antisymmetry residual <= 1e-12, strictly monotone";
  return true;
}

bool crit2_transitive_oracle(std::string& detail) {
  Rng rng(kMasterSeed + 2);
  int mismatches = 0;
  int decided = 0;
  for (int instance = 0; instance < 1000; ++instance) {
    const int n = 3 + static_cast<int>(rng.below(6));  // N <= 8
    std::vector<RawRecord> records;
    const int record_count = static_cast<int>(rng.below(30));
    MemoryStore store;  // unlimited
    for (int t = 0; t < record_count; ++t) {
      const auto a = static_cast<player_id_t>(rng.below(n));
      auto b = static_cast<player_id_t>(rng.below(n - 1));
      if (b >= a) ++b;
      const player_id_t winner = rng.bernoulli(0.5) ? a : b;
      records.push_back({a, b, winner});
      store.remember(ContestRecord{t, a, b, winner});
    }
    std::vector<player_id_t> members;
    for (player_id_t id = 0; id < n; ++id) {
      if (rng.bernoulli(0.6)) members.push_back(id);
    }
    const player_id_t self = 0;
    const auto opponent = static_cast<player_id_t>(1 + rng.below(n - 1));

    const int expected = oracle_transitive(records, self, opponent, members);
    const int got = assessment_value(
        transitive_assessment(store, self, opponent, ReferenceSet::of(members)));
    if (got != expected) ++mismatches;
    decided += (expected != 0);
  }
  detail = "0 mismatches required, got " + std::to_string(mismatches) + " (" +
           std::to_string(decided) + "/1000 decided)";
  return mismatches == 0;
}

bool crit3_hierarchy_speed(std::string& detail) {
  const auto ii = end_of_generation_ci1("II", 16, 14, 30, 100);
  const auto ti22 = end_of_generation_ci1("TI2-2", 16, 14, 30, 100);
  const auto ti88 = end_of_generation_ci1("TI8-8", 16, 14, 30, 100);
  detail = "CI1: II=" + fmt(ii.mean) + " TI2-2=" + fmt(ti22.mean) + " TI8-8=" + fmt(ti88.mean);
  const bool upper = ti88.mean - ti22.mean > 2.0 * gap_se(ti88, ti22);
  const bool lower = ti22.mean - ii.mean > 2.0 * gap_se(ti22, ii);
  if (!upper) detail += " [TI8-8 vs TI2-2 gap < 2se]";
  if (!lower) detail += " [TI2-2 vs II gap < 2se]";
  return upper && lower;
}

bool crit4_shared_reference_advantage(std::string& detail) {
  const auto ti88 = end_of_generation_ci1("TI8-8", 16, 14, 30, 100);
  const auto ti80 = end_of_generation_ci1("TI8-0", 16, 14, 30, 100);
  detail = "CI1: TI8-0=" + fmt(ti80.mean) + " TI8-8=" + fmt(ti88.mean);
  return ti88.mean - ti80.mean > 2.0 * gap_se(ti88, ti80);
}

bool crit5_unlimited_memory_scaling(std::string& detail) {
  std::vector<Sample> by_z;
  detail = "CI1:";
  for (const int z : {2, 4, 6, 8}) {
    const std::string label = "TI" + std::to_string(z) + "-" + std::to_string(z);
    by_z.push_back(end_of_generation_ci1(label, 15, std::nullopt, 30, 50));
    detail += " Z" + std::to_string(z) + "=" + fmt(by_z.back().mean);
  }
  bool pass = by_z[3].mean - by_z[0].mean > 2.0 * gap_se(by_z[3], by_z[0]);
  if (!pass) detail += " [TI8-8 vs TI2-2 gap < 2se]";
  for (std::size_t i = 0; i + 1 < by_z.size(); ++i) {
    if (by_z[i + 1].mean < by_z[i].mean - gap_se(by_z[i + 1], by_z[i])) {
      detail += " [drop at Z=" + std::to_string(2 * (static_cast<int>(i) + 2)) + "]";
      pass = false;
    }
  }
  return pass;
}

std::map<std::string, int> dominance_wins(const ResultTable& table,
                                          const std::string& cell_value,
                                          int param_index) {
  std::map<std::string, int> wins;
  for (const auto& row : table.rows) {
    if (row.kind != "dominant" || row.value != 1.0) continue;
    if (param_index >= 0 && row.params[static_cast<std::size_t>(param_index)] != cell_value) {
      continue;
    }
    ++wins[row.genome];
  }
  return wins;
}

bool crit6_fixed_mix(std::string& detail) {
  ScenarioSpec spec = scenario_preset("evolve-fixed-mix", "desk");
  spec.seed = kMasterSeed;
  spec.workers = worker_count();
  const ResultTable table = run_scenario(spec);
  const auto wins = dominance_wins(table, "", -1);
  const auto of = [&](const char* label) {
    const auto it = wins.find(label);
    return it == wins.end() ? 0 : it->second;
  };
  const int pooled = of("TI4-4") + of("TI6-6") + of("TI8-8") + of("TI35-35");
  detail = "wins: M=" + std::to_string(of("M")) + " II=" + std::to_string(of("II")) +
           " TI2-2=" + std::to_string(of("TI2-2")) + " pooled{TI>=4}=" + std::to_string(pooled);
  return of("M") == 0 && of("II") == 0 && pooled > of("TI2-2");
}

bool crit7_ess_probes(std::string& detail) {
  ScenarioSpec spec = scenario_preset("ess-probe", "desk");
  spec.seed = kMasterSeed;
  spec.workers = worker_count();
  const ResultTable table = run_scenario(spec);

  const auto kept = [&](const std::string& start) {
    int count = 0;
    for (const auto& row : table.rows) {
      if (row.kind == "dominant" && row.params[0] == start && row.genome == start &&
          row.value == 1.0) {
        ++count;
      }
    }
    return count;
  };
  const int ii = kept("II"), ti44 = kept("TI4-4"), ti88 = kept("TI8-8"), ti80 = kept("TI8-0");
  detail = "kept: II=" + std::to_string(ii) + "/10 TI4-4=" + std::to_string(ti44) +
           "/10 TI8-8=" + std::to_string(ti88) + "/10 TI8-0=" + std::to_string(ti80) + "/10";
  return ii >= 8 && ti44 >= 8 && ti88 >= 8 && ti80 <= 2;
}

bool crit8_initial_proportions(std::string& detail) {
  ScenarioSpec spec = scenario_preset("initial-proportion-sweep", "desk");
  spec.seed = kMasterSeed;
  spec.workers = worker_count();
  const ResultTable table = run_scenario(spec);

  const std::vector<std::string> shares = {"10", "30", "50", "70", "90"};
  std::vector<double> fixation;
  const double runs = spec.iterations;
  detail = "TI8-8 fixation:";
  for (const auto& share : shares) {
    int wins = 0;
    for (const auto& row : table.rows) {
      // params are [strategy, ti_share]
      if (row.kind == "dominant" && row.params[1] == share && row.genome == "TI8-8" &&
          row.value == 1.0) {
        ++wins;
      }
    }
    fixation.push_back(wins / runs);
    detail += " " + share + "%=" + fmt(fixation.back());
  }
  bool pass = fixation.back() > fixation.front();
  if (!pass) detail += " [90% not above 10%]";
  for (std::size_t i = 0; i + 1 < fixation.size(); ++i) {
    const double se = std::sqrt(fixation[i] * (1 - fixation[i]) / runs +
                                fixation[i + 1] * (1 - fixation[i + 1]) / runs);
    if (fixation[i + 1] < fixation[i] - se) {
      detail += " [drop after " + shares[i] + "%]";
      pass = false;
    }
  }
  return pass;
}

bool crit9_overlap(std::string& detail) {
  ScenarioSpec spec = scenario_preset("overlap-check", "paper");  // 1e5 draws
  spec.seed = kMasterSeed;
  const ResultTable table = run_scenario(spec);
  std::map<std::string, double> mean, closed;
  for (const auto& row : table.rows) {
    if (row.kind == "mean_intersection") mean[row.params[0]] = row.value;
    if (row.kind == "closed_form") closed[row.params[0]] = row.value;
  }
  bool pass = true;
  detail = "|mc-closed|:";
  for (const auto& [w, value] : mean) {
    const double err = std::abs(value - closed.at(w));
    detail += " w=" + w + ":" + fmt(err);
    pass = pass && err <= 0.05;
  }
  return pass;
}

bool crit10_determinism(std::string& detail) {
  // Reduced but real scenarios; byte-level comparisons throughout.
  ScenarioSpec ci = scenario_preset("ci-curve", "desk");
  ci.grid["strategy"] = {std::string("II"), std::string("TI4-4")};
  ci.iterations = 6;
  ci.seed = kMasterSeed;
  ci.workers = 1;
  const std::string sequential = to_csv(run_scenario(ci));
  ci.workers = 4;
  const std::string parallel = to_csv(run_scenario(ci));
  if (sequential != parallel) {
    detail = "parallel(4) differs from sequential";
    return false;
  }

  ScenarioSpec evolve = scenario_preset("evolve-fixed-mix", "desk");
  evolve.base.n = 7;  // one player per strategy
  for (auto& [genome, count] : evolve.base.initial_composition) count = 1;
  evolve.base.generations = 30;
  evolve.iterations = 4;
  evolve.seed = kMasterSeed;
  evolve.workers = 3;

  const fs::path dir1 = fs::temp_directory_path() / "hdsim_acc_run";
  const fs::path dir2 = fs::temp_directory_path() / "hdsim_acc_replay";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  emit_results(evolve, run_scenario(evolve), dir1);
  const ScenarioSpec replayed = load_manifest(dir1 / "manifest.json");
  emit_results(replayed, run_scenario(replayed), dir2);

  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const bool same_csv = slurp(dir1 / "results.csv") == slurp(dir2 / "results.csv");
  const bool same_manifest = slurp(dir1 / "manifest.json") == slurp(dir2 / "manifest.json");
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  if (!same_csv || !same_manifest) {
    detail = "manifest replay not byte-identical";
    return false;
  }
  detail = "parallel == sequential; manifest replay byte-identical";
  return true;
}

bool crit11_conservation(std::string& detail) {
  SimulationConfig cfg;
  cfg.n = 12;
  cfg.np = 2.0;
  cfg.generations = 1000;
  cfg.mu = 0.01;
  cfg.mc = 6;
  cfg.params = GameParams{4, 30, 1};
  cfg.seed = kMasterSeed;
  cfg.initial_composition = {{StrategyGenome{0, 0}, 4},
                             {StrategyGenome{1, 0}, 4},
                             {StrategyGenome{6, 4}, 4}};
  cfg.validate();

  Population pop = Population::from_composition(cfg);
  Rng rng(cfg.seed);
  std::size_t max_memory = 0;
  const ContestHook hook = [&](const ContestEvent&, const Population& p) {
    for (const auto& player : p.players) max_memory = std::max(max_memory, player.memory.size());
  };

  for (int g = 0; g < cfg.generations; ++g) {
    const GenerationStats stats = run_generation(pop, cfg, rng, hook);
    const auto counts = reproduce(stats.genome_payoff, pop.composition(), cfg, rng);
    int total = 0;
    std::vector<StrategyGenome> genomes;
    for (const auto& [genome, count] : counts) {
      total += count;
      for (int k = 0; k < count; ++k) genomes.push_back(mutate(genome, cfg, rng));
    }
    if (total != cfg.n) {
      detail = "population size " + std::to_string(total) + " at generation " +
               std::to_string(g);
      return false;
    }
    pop = Population::from_genomes(std::move(genomes), cfg.mc);

    double freq_sum = 0.0;
    for (const auto& [genome, f] : frequency_vector(pop)) freq_sum += f;
    if (std::abs(freq_sum - 1.0) > 1e-12) {
      detail = "frequency sum " + fmt(freq_sum) + " at generation " + std::to_string(g);
      return false;
    }
  }
  detail = "1000 generations: size constant, frequencies sum to 1, max memory " +
           std::to_string(max_memory) + " <= 6";
  return max_memory <= 6;
}

}  // namespace

int main() {
  std::printf("acceptance suite (master seed %llu, %d workers)\n",
              static_cast<unsigned long long>(kMasterSeed), worker_count());

  criterion(1, "eq1-win-probability", crit1_win_probability);
  criterion(2, "eq3-oracle-equivalence", crit2_transitive_oracle);
  criterion(3, "hierarchy-speed-ordering", crit3_hierarchy_speed);
  criterion(4, "shared-reference-advantage", crit4_shared_reference_advantage);
  criterion(5, "unlimited-memory-scaling", crit5_unlimited_memory_scaling);
  criterion(6, "fixed-mix-competition", crit6_fixed_mix);
  criterion(7, "ess-probes", crit7_ess_probes);
  criterion(8, "initial-proportion-dependence", crit8_initial_proportions);
  criterion(9, "reference-overlap", crit9_overlap);
  criterion(10, "determinism-and-replay", crit10_determinism);
  criterion(11, "conservation-suite", crit11_conservation);

  if (g_failed == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failed);
  return 1;
}
