#include "hdsim/game.hpp"

#include <cmath>
#include <stdexcept>

namespace hdsim {

void GameParams::validate() const {
  if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("params.v: must be finite and >= 0");
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("params.c: must be finite and >= 0");
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("params.a: must be finite and > 0");
}

double win_probability(Rhp rhp_a, Rhp rhp_b, const GameParams& params) {
  return 1.0 / (1.0 + std::exp(-(rhp_a.value - rhp_b.value) / params.a));
}

Tactic mixed_ess_tactic(const GameParams& params, Rng& rng) {
  return rng.uniform01() < params.hawk_probability() ? Tactic::Hawk : Tactic::Dove;
}

ContestOutcome resolve_contest(Tactic tactic_a, Tactic tactic_b, Rhp rhp_a, Rhp rhp_b,
                               const GameParams& params, Rng& rng) {
  if (tactic_a == Tactic::Dove && tactic_b == Tactic::Dove) {
    return {params.v / 2.0, params.v / 2.0, std::nullopt};
  }
  if (tactic_a == Tactic::Hawk && tactic_b == Tactic::Dove) {
    return {params.v, 0.0, 0};
  }
  if (tactic_a == Tactic::Dove && tactic_b == Tactic::Hawk) {
    return {0.0, params.v, 1};
  }
  const bool a_wins = rng.uniform01() < win_probability(rhp_a, rhp_b, params);
  if (a_wins) return {params.v, -params.c, 0};
  return {-params.c, params.v, 1};
}

}  // namespace hdsim
