#include "hdsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace hdsim {

std::int64_t SimulationConfig::contests_per_generation() const {
  return std::llround(np * static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

void SimulationConfig::validate() const {
  if (n < 2) throw std::invalid_argument("n: group size must be at least 2");
  if (!(np > 0.0) || !std::isfinite(np)) throw std::invalid_argument("np: must be finite and > 0");
  if (generations < 0) throw std::invalid_argument("generations: must be >= 0");
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu: must lie in [0, 1]");
  if (mc && *mc < 1) throw std::invalid_argument("mc: finite capacity must be >= 1");
  params.validate();

  if (mu > 0.0) {
    if (mutation_alphabet.empty()) {
      throw std::invalid_argument("mutation_alphabet: must be non-empty when mu > 0");
    }
    std::set<int> seen;
    for (const int x : mutation_alphabet) {
      if (x < 0) throw std::invalid_argument("mutation_alphabet: negative x value");
      if (x > n) {
        throw std::invalid_argument("mutation_alphabet: x = " + std::to_string(x) +
                                    " exceeds group size " + std::to_string(n));
      }
      if (!seen.insert(x).second) {
        throw std::invalid_argument("mutation_alphabet: duplicate x value " + std::to_string(x));
      }
    }
  }

  if (initial_composition.empty()) {
    throw std::invalid_argument("initial_composition: must name at least one genome");
  }
  int total = 0;
  for (const auto& [genome, count] : initial_composition) {
    genome.validate();
    if (genome.x > n) {
      throw std::invalid_argument("initial_composition: " + genome_label(genome) +
                                  " requires x <= N (" + std::to_string(genome.x) + " > " +
                                  std::to_string(n) + ")");
    }
    if (count < 1) {
      throw std::invalid_argument("initial_composition: " + genome_label(genome) +
                                  ": count must be >= 1");
    }
    total += count;
  }
  if (total != n) {
    throw std::invalid_argument("initial_composition: counts sum to " + std::to_string(total) +
                                ", expected n = " + std::to_string(n));
  }
}

Population Population::from_genomes(std::vector<StrategyGenome> genomes,
                                    std::optional<std::size_t> mc) {
  Population pop;
  pop.players.reserve(genomes.size());
  for (auto& genome : genomes) {
    Player p;
    p.genome = genome;
    p.memory = MemoryStore(mc);
    pop.players.push_back(std::move(p));
  }
  return pop;
}

Population Population::from_composition(const SimulationConfig& config) {
  std::vector<StrategyGenome> genomes;
  genomes.reserve(static_cast<std::size_t>(config.n));
  for (const auto& [genome, count] : config.initial_composition) {
    for (int k = 0; k < count; ++k) genomes.push_back(genome);
  }
  return from_genomes(std::move(genomes), config.mc);
}

std::map<StrategyGenome, int> Population::composition() const {
  std::map<StrategyGenome, int> counts;
  for (const auto& p : players) ++counts[p.genome];
  return counts;
}

double positivity_offset(const SimulationConfig& config) {
  return config.params.c * config.np * static_cast<double>(config.n - 1);
}

GenerationStats run_generation(Population& pop, const SimulationConfig& config, Rng& rng,
                               const ContestHook& hook) {
  const auto n = static_cast<player_id_t>(pop.players.size());
  if (n != config.n) {
    throw std::invalid_argument("run_generation: population size " + std::to_string(n) +
                                " does not match config.n = " + std::to_string(config.n));
  }

  // Generation reset: fresh RHP, empty memories, zero payoff, new reference sets.
  std::vector<StrategyGenome> genomes(static_cast<std::size_t>(n));
  for (player_id_t i = 0; i < n; ++i) {
    auto& p = pop.players[static_cast<std::size_t>(i)];
    p.rhp = Rhp::draw(rng);
    p.memory = MemoryStore(config.mc);
    p.payoff = 0.0;
    genomes[static_cast<std::size_t>(i)] = p.genome;
  }
  auto refs = assign_reference_sets(genomes, rng);
  for (player_id_t i = 0; i < n; ++i) {
    pop.players[static_cast<std::size_t>(i)].refs = std::move(refs[static_cast<std::size_t>(i)]);
  }
  pop.contests_played = 0;

  const std::int64_t contests = config.contests_per_generation();
  for (std::int64_t t = 0; t < contests; ++t) {
    const auto first = static_cast<player_id_t>(rng.below(static_cast<std::uint64_t>(n)));
    auto second = static_cast<player_id_t>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (second >= first) ++second;
    const player_id_t lo = std::min(first, second);
    const player_id_t hi = std::max(first, second);

    auto& pa = pop.players[static_cast<std::size_t>(lo)];
    auto& pb = pop.players[static_cast<std::size_t>(hi)];
    const Tactic ta = choose_tactic(pa.genome, pa.memory, lo, hi, pa.refs, config.params, rng);
    const Tactic tb = choose_tactic(pb.genome, pb.memory, hi, lo, pb.refs, config.params, rng);
    const ContestOutcome outcome =
        resolve_contest(ta, tb, pa.rhp, pb.rhp, config.params, rng);
    pa.payoff += outcome.payoff_a;
    pb.payoff += outcome.payoff_b;

    ContestRecord record{t, lo, hi, std::nullopt};
    if (outcome.winner) record.winner = (*outcome.winner == 0) ? lo : hi;
    if (record.winner) {
      for (player_id_t p = 0; p < n; ++p) {
        auto& observer = pop.players[static_cast<std::size_t>(p)];
        if (observer.genome.is_mixer()) continue;  // never reads memory
        observer.memory.observe(record, p, observer.refs);
      }
    }
    pop.contests_played = static_cast<std::size_t>(t + 1);
    if (hook) hook(ContestEvent{t + 1, record, outcome}, pop);
  }

  GenerationStats stats;
  stats.contests = contests;
  const double offset = positivity_offset(config);
  for (const auto& p : pop.players) {
    double adjusted = p.payoff + offset;
    if (adjusted < 0.0) {
      adjusted = 0.0;
      ++stats.clamped_players;
    }
    stats.genome_payoff[p.genome] += adjusted;
  }
  return stats;
}

std::map<StrategyGenome, int> apportion_largest_remainder(
    const std::map<StrategyGenome, double>& weights, int n) {
  double total = 0.0;
  for (const auto& [genome, weight] : weights) {
    if (weight < 0.0) {
      throw std::invalid_argument("apportion: negative weight for " + genome_label(genome));
    }
    total += weight;
  }
  if (!(total > 0.0)) throw std::invalid_argument("apportion: total weight must be positive");

  // Remainder ties break in canonical genome order (ascending (x, y), the
  // order the labels are enumerated).
  struct Share {
    StrategyGenome genome;
    int floor_count;
    double remainder;
  };
  std::vector<Share> shares;
  int assigned = 0;
  for (const auto& [genome, weight] : weights) {
    const double quota = static_cast<double>(n) * weight / total;
    const int floor_count = static_cast<int>(quota);
    shares.push_back({genome, floor_count, quota - static_cast<double>(floor_count)});
    assigned += floor_count;
  }
  std::stable_sort(shares.begin(), shares.end(), [](const Share& a, const Share& b) {
    if (a.remainder != b.remainder) return a.remainder > b.remainder;
    return a.genome < b.genome;
  });
  for (std::size_t i = 0; assigned < n; ++i) {
    ++shares[i % shares.size()].floor_count;
    ++assigned;
  }
  std::map<StrategyGenome, int> counts;
  for (const auto& share : shares) {
    if (share.floor_count > 0) counts[share.genome] = share.floor_count;
  }
  return counts;
}

std::map<StrategyGenome, int> reproduce(const std::map<StrategyGenome, double>& aggregates,
                                        const std::map<StrategyGenome, int>& current,
                                        const SimulationConfig& config, Rng& rng) {
  const int n = config.n;
  double total = 0.0;
  for (const auto& [genome, weight] : aggregates) {
    if (weight < 0.0) {
      throw std::invalid_argument("reproduce: negative aggregate for " + genome_label(genome));
    }
    total += weight;
  }
  if (total <= 0.0) return current;  // degenerate v = c = 0 style configuration

  if (config.selection == SelectionMode::Deterministic) {
    return apportion_largest_remainder(aggregates, n);
  }

  // Roulette selection: one draw per slot against the cumulative weights.
  std::vector<std::pair<StrategyGenome, double>> cumulative;
  double acc = 0.0;
  for (const auto& [genome, weight] : aggregates) {
    acc += weight;
    cumulative.emplace_back(genome, acc);
  }
  std::map<StrategyGenome, int> counts;
  for (int slot = 0; slot < n; ++slot) {
    const double u = rng.uniform_below(total);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u,
                               [](double value, const auto& entry) { return value < entry.second; });
    if (it == cumulative.end()) --it;
    ++counts[it->first];
  }
  return counts;
}

std::vector<int> shared_locus_values(int x) {
  std::vector<int> values{0};
  for (int y = 2; y <= x; y += 2) values.push_back(y);
  return values;
}

StrategyGenome mutate(StrategyGenome genome, const SimulationConfig& config, Rng& rng) {
  if (config.mu <= 0.0) return genome;

  if (rng.bernoulli(config.mu)) {
    std::vector<int> candidates;
    for (const int x : config.mutation_alphabet) {
      if (x != genome.x) candidates.push_back(x);
    }
    if (!candidates.empty()) {
      genome.x = candidates[rng.below(candidates.size())];
      if (genome.y > genome.x) genome.y = shared_locus_values(genome.x).back();
    }
  }

  if (rng.bernoulli(config.mu)) {
    std::vector<int> candidates;
    for (const int y : shared_locus_values(genome.x)) {
      if (y != genome.y) candidates.push_back(y);
    }
    if (!candidates.empty()) genome.y = candidates[rng.below(candidates.size())];
  }
  return genome;
}

std::vector<double> Trajectory::frequencies(std::size_t generation) const {
  const auto& row = counts.at(generation);
  int total = 0;
  for (const int count : row) total += count;
  std::vector<double> freq(row.size(), 0.0);
  if (total == 0) return freq;
  for (std::size_t i = 0; i < row.size(); ++i) {
    freq[i] = static_cast<double>(row[i]) / static_cast<double>(total);
  }
  return freq;
}

namespace {

/// Every genome a run can visit: the canonical roster, the initial genomes,
/// and (under mutation) the closure of the alphabet with both the even
/// y-ladder and any initial y values that stay legal after an x-mutation.
std::vector<StrategyGenome> genome_universe(const SimulationConfig& config) {
  std::set<StrategyGenome> universe(canonical_roster().begin(), canonical_roster().end());
  for (const auto& [genome, count] : config.initial_composition) universe.insert(genome);
  if (config.mu > 0.0) {
    for (const int x : config.mutation_alphabet) {
      for (const int y : shared_locus_values(x)) universe.insert({x, y});
      for (const auto& [genome, count] : config.initial_composition) {
        if (genome.y <= x && x >= 2) universe.insert({x, genome.y});
      }
    }
  }
  return {universe.begin(), universe.end()};
}

std::vector<int> counts_row(const std::map<StrategyGenome, int>& composition,
                            const std::vector<StrategyGenome>& universe) {
  std::vector<int> row(universe.size(), 0);
  for (const auto& [genome, count] : composition) {
    const auto it = std::lower_bound(universe.begin(), universe.end(), genome);
    if (it == universe.end() || *it != genome) {
      throw std::logic_error("trajectory: genome " + genome_label(genome) +
                             " outside the precomputed universe");
    }
    row[static_cast<std::size_t>(it - universe.begin())] = count;
  }
  return row;
}

}  // namespace

SimulationResult run_simulation(const SimulationConfig& config) {
  config.validate();
  Rng rng(config.seed);

  SimulationResult result;
  result.trajectory.genomes = genome_universe(config);
  result.trajectory.counts.reserve(static_cast<std::size_t>(config.generations) + 1);

  Population pop = Population::from_composition(config);
  result.trajectory.counts.push_back(counts_row(pop.composition(), result.trajectory.genomes));

  for (int g = 0; g < config.generations; ++g) {
    const GenerationStats stats = run_generation(pop, config, rng);
    result.clamped_player_generations += stats.clamped_players;
    result.player_generations += static_cast<std::uint64_t>(config.n);

    const auto counts = reproduce(stats.genome_payoff, pop.composition(), config, rng);
    std::vector<StrategyGenome> genomes;
    genomes.reserve(static_cast<std::size_t>(config.n));
    for (const auto& [genome, count] : counts) {
      for (int k = 0; k < count; ++k) genomes.push_back(genome);
    }
    for (auto& genome : genomes) genome = mutate(genome, config, rng);

    pop = Population::from_genomes(std::move(genomes), config.mc);
    result.trajectory.counts.push_back(counts_row(pop.composition(), result.trajectory.genomes));
  }
  return result;
}

}  // namespace hdsim
