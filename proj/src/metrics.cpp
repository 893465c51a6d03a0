#include "hdsim/metrics.hpp"

#include <stdexcept>

namespace hdsim {

CiSnapshot consistency_index(const Population& pop, const GameParams& params) {
  const auto n = static_cast<player_id_t>(pop.players.size());
  if (n < 2) throw std::invalid_argument("consistency_index: need at least two players");

  const double p = params.hawk_probability();
  const double both_fallback = 2.0 * p * (1.0 - p);
  double sum = 0.0;
  std::size_t pairs = 0;

  for (player_id_t i = 0; i < n; ++i) {
    const auto& pi = pop.players[static_cast<std::size_t>(i)];
    for (player_id_t j = i + 1; j < n; ++j) {
      const auto& pj = pop.players[static_cast<std::size_t>(j)];
      const auto ti = resolved_tactic(pi.genome, pi.memory, i, j, pi.refs);
      const auto tj = resolved_tactic(pj.genome, pj.memory, j, i, pj.refs);

      double complementarity;
      if (ti && tj) {
        complementarity = (*ti != *tj) ? 1.0 : 0.0;
      } else if (ti) {
        complementarity = (*ti == Tactic::Hawk) ? 1.0 - p : p;
      } else if (tj) {
        complementarity = (*tj == Tactic::Hawk) ? 1.0 - p : p;
      } else {
        complementarity = both_fallback;
      }
      sum += complementarity;
      ++pairs;
    }
  }

  CiSnapshot snapshot;
  snapshot.contest_index = pop.contests_played;
  snapshot.ci1 = sum / static_cast<double>(pairs);
  snapshot.ci = 0.5 * (1.0 - snapshot.ci1);
  return snapshot;
}

std::map<StrategyGenome, double> frequency_vector(const Population& pop) {
  std::map<StrategyGenome, double> freq;
  if (pop.players.empty()) return freq;
  const auto n = static_cast<double>(pop.players.size());
  for (const auto& [genome, count] : pop.composition()) {
    freq[genome] = static_cast<double>(count) / n;
  }
  return freq;
}

DominanceResult dominant_genome(const Trajectory& trajectory, double threshold) {
  if (trajectory.counts.empty()) {
    throw std::invalid_argument("dominant_genome: empty trajectory");
  }
  const auto& final_row = trajectory.counts.back();
  const auto freq = trajectory.frequencies(trajectory.counts.size() - 1);

  DominanceResult result;
  int best = -1;
  for (std::size_t g = 0; g < final_row.size(); ++g) {
    if (final_row[g] > best) {
      best = final_row[g];
      result.genome = trajectory.genomes[g];
      result.frequency = freq[g];
      result.tie = false;
    } else if (final_row[g] == best) {
      result.tie = true;  // earlier genome kept: canonical-order tie-break
    }
  }
  result.dominant = result.frequency >= threshold;
  return result;
}

}  // namespace hdsim
