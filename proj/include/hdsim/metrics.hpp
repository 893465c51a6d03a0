#pragma once

#include <cstddef>
#include <map>

#include "hdsim/engine.hpp"

namespace hdsim {

/// Consistency of the social hierarchy at one instant. ci1 = 1 means every
/// pair would play complementary hawk/dove tactics (perfect consensus);
/// ci = 0.5(1 - ci1), so ci = 0 at consensus and 0.5 at complete
/// disagreement.
struct CiSnapshot {
  std::size_t contest_index = 0;  // games played so far this generation
  double ci = 0.0;                // in [0, 0.5]
  double ci1 = 0.0;               // in [0, 1]
};

/// Expected fraction of unordered pairs whose tactics would be complementary
/// ({hawk, dove}) if the pair played right now, with the mixer fallback
/// entering by its hawk probability p = min(v/c, 1):
///   both resolved: 1 if complementary, 0 if identical;
///   one resolved hawk (dove): 1 - p (p);
///   both fall back: 2p(1 - p).
/// Pure observation; nothing in the population is touched.
CiSnapshot consistency_index(const Population& pop, const GameParams& params);

/// Genome frequencies (counts / N) of the genomes present.
std::map<StrategyGenome, double> frequency_vector(const Population& pop);

struct DominanceResult {
  StrategyGenome genome;   // highest final frequency (earliest genome on ties)
  double frequency = 0.0;  // its final frequency
  bool dominant = false;   // frequency >= threshold
  bool tie = false;        // another genome shares the top frequency
};

/// The winner of a completed run: the genome with the highest frequency in
/// the trajectory's final row, flagged dominant when it reaches the
/// threshold.
DominanceResult dominant_genome(const Trajectory& trajectory, double threshold = 0.9);

}  // namespace hdsim
