#pragma once

#include <cstdint>
#include <vector>

namespace hdsim {

using player_id_t = std::int32_t;

/// The players a strategist can recognize and whose contests it can observe.
/// Immutable after construction; membership tests are O(1) via a bitmask.
class ReferenceSet {
 public:
  ReferenceSet() = default;

  /// Builds a set from distinct ids (throws std::invalid_argument on
  /// duplicates or negative ids). May include the owner itself.
  static ReferenceSet of(std::vector<player_id_t> members);

  bool contains(player_id_t id) const {
    const auto word = static_cast<std::size_t>(id) >> 6;
    if (id < 0 || word >= mask_.size()) return false;
    return (mask_[word] >> (id & 63)) & 1u;
  }

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  /// Members in ascending id order.
  const std::vector<player_id_t>& members() const { return members_; }

 private:
  std::vector<player_id_t> members_;
  std::vector<std::uint64_t> mask_;
};

}  // namespace hdsim
