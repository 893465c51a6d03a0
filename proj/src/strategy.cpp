#include "hdsim/strategy.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

namespace hdsim {

void StrategyGenome::validate() const {
  if (x < 0 || y < 0) throw std::invalid_argument("genome: negative locus value");
  if (y > x) throw std::invalid_argument("genome: y exceeds x (" + genome_label(*this) + ")");
  if (x <= 1 && y != 0) throw std::invalid_argument("genome: mixer/II must carry y = 0");
}

const std::vector<StrategyGenome>& canonical_roster() {
  static const std::vector<StrategyGenome> roster = [] {
    std::vector<StrategyGenome> r{{0, 0}, {1, 0}};
    for (int x = 2; x <= 8; x += 2) {
      for (int y = 0; y <= x; y += 2) r.push_back({x, y});
    }
    return r;
  }();
  return roster;
}

std::string genome_label(const StrategyGenome& genome) {
  if (genome.x == 0) return "M";
  if (genome.x == 1) return "II";
  return "TI" + std::to_string(genome.x) + "-" + std::to_string(genome.y);
}

namespace {

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

StrategyGenome parse_genome(std::string_view label) {
  if (label == "M") return {0, 0};
  if (label == "II") return {1, 0};
  const auto reject = [&] {
    throw std::invalid_argument("unknown strategy label: '" + std::string(label) + "'");
  };
  if (label.size() < 5 || label.substr(0, 2) != "TI") reject();
  const auto body = label.substr(2);
  const auto dash = body.find('-');
  if (dash == std::string_view::npos) reject();
  const auto x = parse_int(body.substr(0, dash));
  const auto y = parse_int(body.substr(dash + 1));
  if (!x || !y || *x < 2 || *y < 0 || *y > *x) reject();
  return {*x, *y};
}

namespace {

/// First k elements of a partial Fisher-Yates shuffle over `pool`.
std::vector<player_id_t> sample_without_replacement(std::vector<player_id_t> pool,
                                                    std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

std::vector<ReferenceSet> assign_reference_sets(std::span<const StrategyGenome> genomes,
                                                Rng& rng) {
  const auto n = static_cast<player_id_t>(genomes.size());
  std::map<StrategyGenome, std::vector<player_id_t>> classes;
  for (player_id_t i = 0; i < n; ++i) {
    genomes[i].validate();
    if (genomes[i].x > n) {
      throw std::invalid_argument("genome " + genome_label(genomes[i]) +
                                  ": x exceeds group size " + std::to_string(n));
    }
    if (genomes[i].is_transitive()) classes[genomes[i]].push_back(i);
  }

  std::vector<player_id_t> everyone(static_cast<std::size_t>(n));
  for (player_id_t i = 0; i < n; ++i) everyone[static_cast<std::size_t>(i)] = i;

  std::vector<ReferenceSet> refs(genomes.size());
  for (const auto& [genome, players] : classes) {
    const auto shared =
        sample_without_replacement(everyone, static_cast<std::size_t>(genome.y), rng);

    std::vector<player_id_t> remaining;
    remaining.reserve(everyone.size() - shared.size());
    for (const player_id_t id : everyone) {
      if (std::find(shared.begin(), shared.end(), id) == shared.end()) remaining.push_back(id);
    }

    const auto private_count = static_cast<std::size_t>(genome.x - genome.y);
    for (const player_id_t player : players) {
      auto members = sample_without_replacement(remaining, private_count, rng);
      members.insert(members.end(), shared.begin(), shared.end());
      refs[static_cast<std::size_t>(player)] = ReferenceSet::of(std::move(members));
    }
  }
  return refs;
}

Assessment transitive_assessment(const MemoryStore& store, player_id_t self,
                                 player_id_t opponent, const ReferenceSet& refs) {
  long long sum = 0;
  int n = 0;
  for (const player_id_t mid : refs.members()) {
    if (mid == self || mid == opponent) continue;
    if (!store.has_records_between(self, mid) || !store.has_records_between(opponent, mid)) {
      continue;  // no record against one endpoint: dropped from the average
    }
    sum += assessment_value(sign_of(assessment_value(store.pair_assessment(opponent, mid)) +
                                    assessment_value(store.pair_assessment(mid, self))));
    ++n;
  }
  if (n == 0) return Assessment::Even;
  return sign_of(sum);  // sign of the mean == sign of the sum for n > 0
}

std::optional<Tactic> resolved_tactic(const StrategyGenome& genome, const MemoryStore& store,
                                      player_id_t self, player_id_t opponent,
                                      const ReferenceSet& refs) {
  if (genome.x >= 1) {
    const Assessment direct = store.direct_assessment(self, opponent);
    if (direct == Assessment::Weaker) return Tactic::Hawk;
    if (direct == Assessment::Stronger) return Tactic::Dove;
  }
  if (genome.x >= 2) {
    const Assessment inferred = transitive_assessment(store, self, opponent, refs);
    if (inferred == Assessment::Weaker) return Tactic::Hawk;
    if (inferred == Assessment::Stronger) return Tactic::Dove;
  }
  return std::nullopt;
}

Tactic choose_tactic(const StrategyGenome& genome, const MemoryStore& store, player_id_t self,
                     player_id_t opponent, const ReferenceSet& refs, const GameParams& params,
                     Rng& rng) {
  if (const auto tactic = resolved_tactic(genome, store, self, opponent, refs)) return *tactic;
  return mixed_ess_tactic(params, rng);
}

}  // namespace hdsim
