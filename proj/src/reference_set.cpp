#include "hdsim/reference_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdsim {

ReferenceSet ReferenceSet::of(std::vector<player_id_t> members) {
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw std::invalid_argument("reference set: duplicate member");
  }
  if (!members.empty() && members.front() < 0) {
    throw std::invalid_argument("reference set: negative player id");
  }
  ReferenceSet set;
  if (!members.empty()) {
    set.mask_.resize((static_cast<std::size_t>(members.back()) >> 6) + 1, 0);
    for (const player_id_t id : members) {
      set.mask_[static_cast<std::size_t>(id) >> 6] |= std::uint64_t{1} << (id & 63);
    }
  }
  set.members_ = std::move(members);
  return set;
}

}  // namespace hdsim
