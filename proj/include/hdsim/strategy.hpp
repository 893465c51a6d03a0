#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdsim/game.hpp"
#include "hdsim/memory.hpp"
#include "hdsim/rng.hpp"

namespace hdsim {

/// Heritable strategy loci: x is the number of reference members, y the
/// number of those shared by all same-strategy players in a generation.
///   x = 0          mixer (M)
///   x = 1          immediate inference (II)
///   x >= 2         transitive inference TI_{x-y}
/// y <= x always; mixer and II carry y = 0.
struct StrategyGenome {
  int x = 0;
  int y = 0;

  bool is_mixer() const { return x == 0; }
  bool is_immediate() const { return x == 1; }
  bool is_transitive() const { return x >= 2; }

  /// Throws std::invalid_argument when the locus combination is illegal.
  void validate() const;

  auto operator<=>(const StrategyGenome&) const = default;
};

/// Canonical display order of genomes: ascending (x, y). This is also the
/// documented tie-break order used by reproduction.
inline bool genome_order(const StrategyGenome& a, const StrategyGenome& b) { return a < b; }

/// The 16-strategy roster: M, II, and TI_{x-y} for x in {2,4,6,8},
/// y in {0,2,...,x}.
const std::vector<StrategyGenome>& canonical_roster();

/// "M", "II", or "TI<x>-<y>".
std::string genome_label(const StrategyGenome& genome);

/// Inverse of genome_label; throws std::invalid_argument on anything that
/// is not a canonical label (unknown names, y > x, "TI0-0", "TI1-0", ...).
StrategyGenome parse_genome(std::string_view label);

/// Draws reference sets for every player. Same-genome players share one
/// freshly drawn y-member subset; each then receives x - y private members
/// drawn from the players outside the shared subset. Mixer and II players
/// receive empty sets. Draw order: genome classes ascending, shared subset
/// first, then private picks per player in index order.
/// Throws std::invalid_argument if any genome has x > N.
std::vector<ReferenceSet> assign_reference_sets(std::span<const StrategyGenome> genomes,
                                                Rng& rng);

/// Rank of the opponent relative to self inferred through common opponents:
/// reference members (excluding the two endpoints) with remembered records
/// against both. Returns the sign of the mean of the per-intermediary signed
/// sums; Even when no common opponent exists.
Assessment transitive_assessment(const MemoryStore& store, player_id_t self,
                                 player_id_t opponent, const ReferenceSet& refs);

/// The deterministic prefix of the tactic cascade: direct assessment first,
/// then transitive inference for TI genomes. Empty when neither settles the
/// choice and the decision falls through to the mixed ESS.
std::optional<Tactic> resolved_tactic(const StrategyGenome& genome, const MemoryStore& store,
                                      player_id_t self, player_id_t opponent,
                                      const ReferenceSet& refs);

/// Full cascade: resolved tactic if any, otherwise a mixed-ESS draw.
Tactic choose_tactic(const StrategyGenome& genome, const MemoryStore& store, player_id_t self,
                     player_id_t opponent, const ReferenceSet& refs, const GameParams& params,
                     Rng& rng);

}  // namespace hdsim
