#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "hdsim/game.hpp"
#include "hdsim/memory.hpp"
#include "hdsim/rng.hpp"
#include "hdsim/strategy.hpp"

namespace hdsim {

enum class SelectionMode { Deterministic, Stochastic };

/// Full parameterization of one evolutionary run.
///
/// Draw order within a generation (fixed; the replay contract depends on it):
///   1. RHP per player, in player-index order.
///   2. Reference sets: genome classes ascending, shared subset then private
///      picks per player in index order.
///   3. Per contest: pair selection (two draws), tactic draws in
///      player-index order (only on mixer fallback), fight resolution (only
///      for hawk-hawk).
///   4. Selection draws (stochastic mode only), one per slot.
///   5. Mutation per next-generation individual in slot order: x-locus
///      Bernoulli, value pick if fired; y-locus Bernoulli, value pick if
///      fired. Skipped entirely when mu = 0.
struct SimulationConfig {
  int n = 20;                // group size N
  double np = 2.0;           // expected contests per pair N_p
  int generations = 10000;   // G
  double mu = 0.001;         // per-locus mutation probability
  std::optional<std::size_t> mc = 14;  // memory capacity; empty = unlimited
  GameParams params{};
  std::vector<int> mutation_alphabet = {0, 1, 2, 4, 6, 8};  // legal x-locus values
  std::uint64_t seed = 0;
  SelectionMode selection = SelectionMode::Deterministic;
  std::map<StrategyGenome, int> initial_composition;  // genome -> player count

  /// T = round(N_p * N(N-1)/2), so that N_p = 2T / (N(N-1)).
  std::int64_t contests_per_generation() const;

  /// Throws std::invalid_argument with a per-field message.
  void validate() const;
};

struct Player {
  StrategyGenome genome;
  Rhp rhp;
  ReferenceSet refs;
  MemoryStore memory;
  double payoff = 0.0;
};

struct Population {
  std::vector<Player> players;
  std::size_t contests_played = 0;  // within the current generation

  /// Players laid out per the composition, genome classes in canonical order.
  static Population from_composition(const SimulationConfig& config);
  static Population from_genomes(std::vector<StrategyGenome> genomes,
                                 std::optional<std::size_t> mc);

  std::map<StrategyGenome, int> composition() const;
  std::size_t size() const { return players.size(); }
};

/// Fired after every contest; `index` is the number of games played so far.
struct ContestEvent {
  std::int64_t index = 0;
  ContestRecord record;
  ContestOutcome outcome;
};
using ContestHook = std::function<void(const ContestEvent&, const Population&)>;

struct GenerationStats {
  /// Per-genome sums of offset-adjusted, zero-clamped player payoffs.
  std::map<StrategyGenome, double> genome_payoff;
  std::uint64_t clamped_players = 0;  // adjusted payoff fell below zero
  std::int64_t contests = 0;
};

/// Magnitude of the expected per-player minimum payoff, c * np * (n-1);
/// added to every raw payoff before aggregation so selection weights are
/// nonnegative.
double positivity_offset(const SimulationConfig& config);

/// One generation: reset RHP/memories/reference sets, play T contests
/// (every decided contest is offered to every non-mixer player's memory),
/// then aggregate adjusted payoffs by genome. The population is left in its
/// end-of-generation state.
GenerationStats run_generation(Population& pop, const SimulationConfig& config, Rng& rng,
                               const ContestHook& hook = {});

/// Largest-remainder apportionment of n slots proportional to nonnegative
/// weights (total must be positive); remainder ties break in canonical
/// genome order. Zero-count genomes are omitted from the result.
std::map<StrategyGenome, int> apportion_largest_remainder(
    const std::map<StrategyGenome, double>& weights, int n);

/// Apportions the N next-generation slots proportionally to the adjusted
/// genome aggregates. Deterministic mode uses largest-remainder rounding
/// with ties broken in canonical genome order; stochastic mode draws each
/// slot from the aggregate distribution. All-zero aggregates carry the
/// current composition unchanged. Zero-count genomes are omitted.
std::map<StrategyGenome, int> reproduce(const std::map<StrategyGenome, double>& aggregates,
                                        const std::map<StrategyGenome, int>& current,
                                        const SimulationConfig& config, Rng& rng);

/// Legal y-locus values for a given x: {0, 2, ..., x} (just {0} when x <= 1).
std::vector<int> shared_locus_values(int x);

/// Two-locus mutation: with probability mu the x-locus is replaced by a
/// uniformly chosen different alphabet value (y re-clamped if it exceeds the
/// new x); then, independently with probability mu, the y-locus is replaced
/// by a uniformly chosen different legal value for the current x.
StrategyGenome mutate(StrategyGenome genome, const SimulationConfig& config, Rng& rng);

/// Genome counts per generation. Row 0 is the initial composition; row g is
/// the composition entering generation g+1.
struct Trajectory {
  std::vector<StrategyGenome> genomes;      // fixed universe, canonical order
  std::vector<std::vector<int>> counts;     // [generation][genome index]

  std::size_t generations() const { return counts.empty() ? 0 : counts.size() - 1; }
  std::vector<double> frequencies(std::size_t generation) const;
};

struct SimulationResult {
  Trajectory trajectory;
  std::uint64_t clamped_player_generations = 0;
  std::uint64_t player_generations = 0;
};

/// The full generational loop: run_generation -> reproduce -> mutate, G
/// times. Deterministic given config.seed.
SimulationResult run_simulation(const SimulationConfig& config);

}  // namespace hdsim
