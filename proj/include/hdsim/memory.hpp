#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>

#include "hdsim/reference_set.hpp"

namespace hdsim {

/// Relative-rank assessment of one player against another: the sign of the
/// win/loss tally. Stronger means "the assessed player is stronger".
enum class Assessment : int { Weaker = -1, Even = 0, Stronger = 1 };

/// Sign function F: +1 / 0 / -1 for positive / zero / negative.
constexpr Assessment sign_of(long long r) {
  if (r > 0) return Assessment::Stronger;
  if (r < 0) return Assessment::Weaker;
  return Assessment::Even;
}

constexpr int assessment_value(Assessment a) { return static_cast<int>(a); }

/// One remembered contest. `winner`, when present, is one of the two
/// participants; dove-dove contests have no winner and are never stored.
struct ContestRecord {
  std::int64_t time = 0;  // contest index within the generation
  player_id_t first = 0;
  player_id_t second = 0;
  std::optional<player_id_t> winner;

  bool operator==(const ContestRecord&) const = default;
};

/// Bounded first-in-first-out contest memory of a single player. Own and
/// observed contests share the one capacity budget; the oldest record is
/// evicted first. A per-pair win/loss tally is maintained incrementally so
/// assessments are O(1) regardless of capacity.
class MemoryStore {
 public:
  /// Empty capacity means unlimited.
  explicit MemoryStore(std::optional<std::size_t> capacity = std::nullopt)
      : capacity_(capacity) {}

  /// Stores the record iff it has a winner and is visible to the observer:
  /// the observer is a participant, or at least one participant is in the
  /// observer's reference set. Anything else leaves the store unchanged.
  void observe(const ContestRecord& record, player_id_t observer, const ReferenceSet& refs);

  /// Unconditional insert, bypassing the visibility rule (fixtures and
  /// oracle tests). The record must be valid and decided.
  void remember(const ContestRecord& record);

  /// R(b|a): sign of b's wins minus b's losses over remembered records
  /// between a and b. Even when no such records exist, and by definition
  /// when a == b.
  Assessment pair_assessment(player_id_t b, player_id_t a) const;

  /// R_self(opponent|self): Stronger means the opponent looks stronger.
  Assessment direct_assessment(player_id_t self, player_id_t opponent) const {
    return pair_assessment(opponent, self);
  }

  bool has_records_between(player_id_t x, player_id_t y) const;

  std::size_t size() const { return records_.size(); }
  std::optional<std::size_t> capacity() const { return capacity_; }
  const std::deque<ContestRecord>& records() const { return records_; }
  void clear();

  bool operator==(const MemoryStore& other) const {
    return capacity_ == other.capacity_ && records_ == other.records_;
  }

 private:
  struct PairTally {
    std::int32_t count = 0;   // records between the pair
    std::int32_t lo_net = 0;  // wins of the lower id minus wins of the higher id
  };

  static std::uint64_t pair_key(player_id_t x, player_id_t y);
  void apply(const ContestRecord& record, int direction);

  std::optional<std::size_t> capacity_;
  std::deque<ContestRecord> records_;
  std::unordered_map<std::uint64_t, PairTally> tally_;
};

}  // namespace hdsim
