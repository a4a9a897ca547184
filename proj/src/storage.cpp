#include "gp2/storage.hpp"

#include <bit>
#include <cstring>

namespace gp2 {

SlotStore::SlotStore(std::size_t elem_size) : elem_size_(elem_size) {
  if (elem_size == 0 || elem_size > kInlineBytes) {
    throw std::invalid_argument("slot size must be in 1..160 bytes");
  }
  std::size_t s = elem_size < sizeof(HoleLink) ? sizeof(HoleLink) : elem_size;
  stride_ = (s + 7) / 8 * 8;
  inline_capacity_ = kInlineBytes / stride_;
}

RegionCoord SlotStore::region_coord(std::size_t j) noexcept {
  std::size_t v = j + 2;
  std::size_t msb = std::bit_width(v) - 1;
  return {msb - 1, v - (std::size_t{1} << msb)};
}

std::size_t SlotStore::capacity() const noexcept {
  std::size_t cap = inline_capacity_;
  for (std::size_t k = 0; k < regions_.size(); ++k) cap += region_capacity(k);
  return cap;
}

void SlotStore::grow() {
  std::size_t k = regions_.size();
  regions_.push_back(std::make_unique<std::byte[]>(region_capacity(k) * stride_));
}

SlotStore::Slot SlotStore::allocate() {
  Slot s;
  if (first_hole_ != nullptr) {
    HoleLink link;
    std::memcpy(&link, first_hole_, sizeof link);
    s.ptr = first_hole_;
    s.index = link.self;
    first_hole_ = link.next;
  } else {
    if (high_water_ >= inline_capacity_) {
      RegionCoord c = region_coord(high_water_ - inline_capacity_);
      if (c.region >= regions_.size()) grow();
    }
    s.index = high_water_++;
    s.ptr = at(s.index);
  }
#if GP2_CHECKED_STORAGE
  set_live(s.index, true);
#endif
  ++live_count_;
  return s;
}

void SlotStore::release(void* slot) {
  std::size_t index = index_of(slot);
#if GP2_CHECKED_STORAGE
  if (!is_live(index)) throw ContractViolation("slot released twice");
  set_live(index, false);
#endif
  HoleLink link{first_hole_, index};
  std::memcpy(slot, &link, sizeof link);
  first_hole_ = slot;
  --live_count_;
}

std::size_t SlotStore::first_hole_index() const {
  if (first_hole_ == nullptr) throw std::logic_error("no hole");
  HoleLink link;
  std::memcpy(&link, first_hole_, sizeof link);
  return link.self;
}

std::size_t SlotStore::hole_successor_index(std::size_t hole_index) const {
  HoleLink link;
  std::memcpy(&link, at(hole_index), sizeof link);
  if (link.next == nullptr) return static_cast<std::size_t>(-1);
  HoleLink next;
  std::memcpy(&next, link.next, sizeof next);
  return next.self;
}

std::size_t SlotStore::index_of(const void* slot) const {
  auto p = static_cast<const std::byte*>(slot);
  if (p >= inline_ && p < inline_ + kInlineBytes) {
    return static_cast<std::size_t>(p - inline_) / stride_;
  }
  // Most slots sit in the newest regions, so search from the top.
  for (std::size_t k = regions_.size(); k-- > 0;) {
    const std::byte* r = regions_[k].get();
    std::size_t n = region_capacity(k);
    if (p >= r && p < r + n * stride_) {
      std::size_t base = inline_capacity_ + region_capacity(k) - 2;
      return base + static_cast<std::size_t>(p - r) / stride_;
    }
  }
  throw ContractViolation("pointer does not belong to this store");
}

#if GP2_CHECKED_STORAGE
bool SlotStore::is_live(std::size_t index) const {
  if (index < 64) return (live_low_ >> index) & 1u;
  std::size_t w = (index - 64) / 64;
  if (w >= live_high_.size()) return false;
  return (live_high_[w] >> ((index - 64) % 64)) & 1u;
}

void SlotStore::set_live(std::size_t index, bool live) {
  std::uint64_t* word;
  std::size_t bit;
  if (index < 64) {
    word = &live_low_;
    bit = index;
  } else {
    std::size_t w = (index - 64) / 64;
    if (w >= live_high_.size()) live_high_.resize(w + 1, 0);
    word = &live_high_[w];
    bit = (index - 64) % 64;
  }
  if (live) {
    *word |= std::uint64_t{1} << bit;
  } else {
    *word &= ~(std::uint64_t{1} << bit);
  }
}
#endif

}  // namespace gp2
