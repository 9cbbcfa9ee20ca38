// SPDX-License-Identifier: Apache-2.0
#include "tbridge/core/pool.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tbridge::core {

VehiclePool::VehiclePool(const std::map<std::string, std::size_t>& initial, std::size_t default_capacity, double growth)
    : default_capacity_(std::max<std::size_t>(1, default_capacity)), growth_(growth) {
  if (!(growth_ > 1.0)) throw std::invalid_argument("pool growth factor must be > 1");
  for (const auto& [vtype, capacity] : initial) pool_for(vtype, std::max<std::size_t>(1, capacity));
}

void VehiclePool::grow(TypePool& pool, std::size_t new_capacity) {
  std::size_t old = pool.active.size();
  pool.active.resize(new_capacity, false);
  // keep the lowest new index on top of the stack
  std::vector<std::uint32_t> fresh;
  fresh.reserve(new_capacity - old);
  for (std::size_t i = new_capacity; i > old; --i) fresh.push_back(static_cast<std::uint32_t>(i - 1));
  pool.free.insert(pool.free.begin(), fresh.begin(), fresh.end());
}

VehiclePool::TypePool& VehiclePool::pool_for(std::string_view vtype, std::size_t capacity) {
  if (auto it = by_name_.find(vtype); it != by_name_.end()) return pools_[it->second];
  auto index = static_cast<std::uint32_t>(pools_.size());
  TypePool p;
  p.vtype = std::string(vtype);
  grow(p, capacity == 0 ? default_capacity_ : capacity);
  pools_.push_back(std::move(p));
  by_name_.emplace(std::string(vtype), index);
  return pools_.back();
}

SlotHandle VehiclePool::acquire(std::string_view vtype) {
  TypePool& p = pool_for(vtype);
  if (p.free.empty()) {
    std::size_t cap = p.active.size();
    auto next = static_cast<std::size_t>(std::ceil(static_cast<double>(cap) * growth_));
    grow(p, std::max(next, cap + 1));
    ++p.resizes;
  }
  std::uint32_t slot = p.free.back();
  p.free.pop_back();
  p.active[slot] = true;
  ++p.active_count;
  p.high_water = std::max(p.high_water, p.active_count);
  return {by_name_.find(vtype)->second, slot};
}

void VehiclePool::release(SlotHandle h) {
  if (!is_active(h)) throw std::logic_error("releasing a slot that is not active");
  TypePool& p = pools_[h.type_index];
  p.active[h.slot] = false;
  --p.active_count;
  p.free.push_back(h.slot);
}

bool VehiclePool::is_active(SlotHandle h) const {
  return h.type_index < pools_.size() && h.slot < pools_[h.type_index].active.size() &&
         pools_[h.type_index].active[h.slot];
}

std::vector<VehiclePool::TypeStats> VehiclePool::stats() const {
  std::vector<TypeStats> out;
  for (const auto& [name, index] : by_name_) out.push_back(stats(name));
  return out;
}

VehiclePool::TypeStats VehiclePool::stats(std::string_view vtype) const {
  TypeStats s;
  s.vtype = std::string(vtype);
  auto it = by_name_.find(vtype);
  if (it == by_name_.end()) return s;
  const TypePool& p = pools_[it->second];
  s.capacity = p.active.size();
  s.free = p.free.size();
  s.active = p.active_count;
  s.high_water = p.high_water;
  s.resizes = p.resizes;
  return s;
}

std::size_t VehiclePool::total_capacity() const {
  std::size_t n = 0;
  for (const auto& p : pools_) n += p.active.size();
  return n;
}

std::size_t VehiclePool::total_free() const {
  std::size_t n = 0;
  for (const auto& p : pools_) n += p.free.size();
  return n;
}

std::size_t VehiclePool::total_active() const {
  std::size_t n = 0;
  for (const auto& p : pools_) n += p.active_count;
  return n;
}

std::size_t VehiclePool::total_resizes() const {
  std::size_t n = 0;
  for (const auto& p : pools_) n += p.resizes;
  return n;
}

}  // namespace tbridge::core
