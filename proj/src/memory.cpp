#include "hdsim/memory.hpp"

#include <stdexcept>

namespace hdsim {

std::uint64_t MemoryStore::pair_key(player_id_t x, player_id_t y) {
  const auto lo = static_cast<std::uint32_t>(x < y ? x : y);
  const auto hi = static_cast<std::uint32_t>(x < y ? y : x);
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

void MemoryStore::apply(const ContestRecord& record, int direction) {
  auto& tally = tally_[pair_key(record.first, record.second)];
  tally.count += direction;
  const player_id_t lo = record.first < record.second ? record.first : record.second;
  tally.lo_net += (*record.winner == lo ? direction : -direction);
  if (tally.count == 0) tally_.erase(pair_key(record.first, record.second));
}

void MemoryStore::observe(const ContestRecord& record, player_id_t observer,
                          const ReferenceSet& refs) {
  if (!record.winner.has_value()) return;
  const bool visible = observer == record.first || observer == record.second ||
                       refs.contains(record.first) || refs.contains(record.second);
  if (!visible) return;
  remember(record);
}

void MemoryStore::remember(const ContestRecord& record) {
  if (record.first == record.second) {
    throw std::invalid_argument("contest record: identical participants");
  }
  if (!record.winner.has_value()) {
    throw std::invalid_argument("contest record: cannot remember an undecided contest");
  }
  if (*record.winner != record.first && *record.winner != record.second) {
    throw std::invalid_argument("contest record: winner is not a participant");
  }
  records_.push_back(record);
  apply(record, +1);
  if (capacity_ && records_.size() > *capacity_) {
    apply(records_.front(), -1);
    records_.pop_front();
  }
}

Assessment MemoryStore::pair_assessment(player_id_t b, player_id_t a) const {
  if (a == b) return Assessment::Even;
  const auto it = tally_.find(pair_key(a, b));
  if (it == tally_.end()) return Assessment::Even;
  const player_id_t lo = a < b ? a : b;
  const std::int32_t b_net = (b == lo) ? it->second.lo_net : -it->second.lo_net;
  return sign_of(b_net);
}

bool MemoryStore::has_records_between(player_id_t x, player_id_t y) const {
  if (x == y) return false;
  return tally_.find(pair_key(x, y)) != tally_.end();
}

void MemoryStore::clear() {
  records_.clear();
  tally_.clear();
}

}  // namespace hdsim
