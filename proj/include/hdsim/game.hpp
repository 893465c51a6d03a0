#pragma once

#include <optional>

#include "hdsim/rng.hpp"

namespace hdsim {

/// Payoff and fight parameters of the asymmetric hawk-dove contest.
struct GameParams {
  double v = 4.0;   // reward per contest
  double c = 30.0;  // cost of losing a fight
  double a = 1.0;   // RHP-sensitivity scale of the win-probability sigmoid

  /// Probability of playing hawk under the mixed ESS: v/c when v < c, else 1.
  double hawk_probability() const { return v >= c ? 1.0 : v / c; }

  /// Throws std::invalid_argument on out-of-range values. Zero v or c is
  /// accepted (degenerate but well-defined games); a must be positive.
  void validate() const;
};

enum class Tactic { Hawk, Dove };

/// Resource-holding potential: latent fighting strength in [0, 10).
struct Rhp {
  double value = 0.0;

  static Rhp draw(Rng& rng) { return Rhp{rng.uniform_below(10.0)}; }
};

/// Result of one contest between players A and B. `winner` is 0 for A,
/// 1 for B, and empty for the winnerless dove-dove outcome.
struct ContestOutcome {
  double payoff_a = 0.0;
  double payoff_b = 0.0;
  std::optional<int> winner;
};

/// Probability that A beats B in a fight: 1 / (1 + exp(-(rhp_a - rhp_b)/a)).
double win_probability(Rhp rhp_a, Rhp rhp_b, const GameParams& params);

/// Mixed-ESS tactic: hawk with probability min(v/c, 1). Consumes exactly one
/// draw, even when the probability is 1.
Tactic mixed_ess_tactic(const GameParams& params, Rng& rng);

/// Plays out one contest. Consumes one draw only for hawk-hawk fights.
///   dove-dove: each gets v/2, no winner.
///   hawk-dove: hawk gets v, dove gets 0.
///   hawk-hawk: A wins with win_probability(rhp_a, rhp_b); winner v, loser -c.
ContestOutcome resolve_contest(Tactic tactic_a, Tactic tactic_b, Rhp rhp_a, Rhp rhp_b,
                               const GameParams& params, Rng& rng);

}  // namespace hdsim
