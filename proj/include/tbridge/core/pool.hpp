// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tbridge::core {

struct SlotHandle {
  std::uint32_t type_index = 0;
  std::uint32_t slot = 0;
  friend auto operator<=>(SlotHandle, SlotHandle) = default;
};

/// Reusable vehicle slots, one pool per vehicle type. A slot is always either
/// on its type's free list or active. An exhausted pool grows by the growth
/// factor instead of failing.
class VehiclePool {
 public:
  explicit VehiclePool(const std::map<std::string, std::size_t>& initial = {}, std::size_t default_capacity = 64,
                       double growth = 1.5);

  /// Most recently released slot first. Unknown types get a fresh pool of
  /// default capacity.
  SlotHandle acquire(std::string_view vtype);

  /// Throws std::logic_error if the slot is not active.
  void release(SlotHandle slot);

  bool is_active(SlotHandle slot) const;
  const std::string& vtype_of(SlotHandle slot) const { return pools_.at(slot.type_index).vtype; }

  struct TypeStats {
    std::string vtype;
    std::size_t capacity = 0;
    std::size_t free = 0;
    std::size_t active = 0;
    std::size_t high_water = 0;
    std::size_t resizes = 0;
  };
  std::vector<TypeStats> stats() const;
  TypeStats stats(std::string_view vtype) const;

  std::size_t total_capacity() const;
  std::size_t total_free() const;
  std::size_t total_active() const;
  std::size_t total_resizes() const;

 private:
  struct TypePool {
    std::string vtype;
    std::vector<std::uint32_t> free;  // stack
    std::vector<bool> active;
    std::size_t active_count = 0;
    std::size_t high_water = 0;
    std::size_t resizes = 0;
  };

  TypePool& pool_for(std::string_view vtype, std::size_t capacity = 0);  // 0 = default capacity
  static void grow(TypePool& pool, std::size_t new_capacity);

  std::vector<TypePool> pools_;
  std::map<std::string, std::uint32_t, std::less<>> by_name_;
  std::size_t default_capacity_;
  double growth_;
};

}  // namespace tbridge::core
