// Slot storage with stable addresses: an inline chunk followed by doubling
// regions, freed slots threaded into a LIFO hole list.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <new>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gp2 {

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RegionCoord {
  std::size_t region = 0;
  std::size_t offset = 0;
  friend bool operator==(const RegionCoord&, const RegionCoord&) = default;
};

class SlotStore {
 public:
  static constexpr std::size_t kInlineBytes = 160;

  struct Slot {
    void* ptr = nullptr;
    std::size_t index = 0;
  };

  explicit SlotStore(std::size_t elem_size);
  SlotStore(const SlotStore&) = delete;
  SlotStore& operator=(const SlotStore&) = delete;

  Slot allocate();
  void release(void* slot);

  void* at(std::size_t index) const noexcept {
    if (index < inline_capacity_) {
      return const_cast<std::byte*>(inline_) + index * stride_;
    }
    RegionCoord c = region_coord(index - inline_capacity_);
    return regions_[c.region].get() + c.offset * stride_;
  }

  // Visits every index below high_water, holes included.
  template <class Visit>
  void index_scan(Visit&& visit) const {
    for (std::size_t i = 0; i < high_water_; ++i) visit(i, at(i));
  }

  // j counts slots after the inline chunk.
  static RegionCoord region_coord(std::size_t j) noexcept;
  static std::size_t region_capacity(std::size_t k) noexcept {
    return std::size_t{2} << k;
  }

  std::size_t elem_size() const noexcept { return elem_size_; }
  std::size_t stride() const noexcept { return stride_; }
  std::size_t inline_capacity() const noexcept { return inline_capacity_; }
  std::size_t high_water() const noexcept { return high_water_; }
  std::size_t live_count() const noexcept { return live_count_; }
  std::size_t region_count() const noexcept { return regions_.size(); }
  std::size_t capacity() const noexcept;
  bool has_hole() const noexcept { return first_hole_ != nullptr; }
  std::size_t first_hole_index() const;
  // Index held by the hole link stored in a freed slot.
  std::size_t hole_successor_index(std::size_t hole_index) const;

 private:
  struct HoleLink {
    void* next;
    std::size_t self;
  };

  void grow();
  std::size_t index_of(const void* slot) const;
#if GP2_CHECKED_STORAGE
  bool is_live(std::size_t index) const;
  void set_live(std::size_t index, bool live);
  std::uint64_t live_low_ = 0;
  std::vector<std::uint64_t> live_high_;
#endif

  alignas(16) std::byte inline_[kInlineBytes];
  std::vector<std::unique_ptr<std::byte[]>> regions_;
  void* first_hole_ = nullptr;
  std::size_t elem_size_;
  std::size_t stride_;
  std::size_t inline_capacity_;
  std::size_t high_water_ = 0;
  std::size_t live_count_ = 0;
};

template <class T>
class BigArray {
  static_assert(alignof(T) <= 8, "slots are 8-byte aligned");

 public:
  BigArray() : slots_(sizeof(T)) {}

  template <class... Args>
  std::pair<T*, std::size_t> emplace(Args&&... args) {
    SlotStore::Slot s = slots_.allocate();
    T* item = ::new (s.ptr) T(std::forward<Args>(args)...);
    return {item, s.index};
  }

  template <class... Args>
  T* create(Args&&... args) {
    return emplace(std::forward<Args>(args)...).first;
  }

  void destroy(T* item) {
    item->~T();
    slots_.release(item);
  }

  // Only meaningful for indices holding a constructed T.
  T* at(std::size_t index) const noexcept {
    return std::launder(static_cast<T*>(slots_.at(index)));
  }

  const SlotStore& slots() const noexcept { return slots_; }
  std::size_t live_count() const noexcept { return slots_.live_count(); }
  std::size_t high_water() const noexcept { return slots_.high_water(); }

 private:
  SlotStore slots_;
};

template <class T>
struct ChainEntry {
  T* item;
  ChainEntry* next;
  ChainEntry* prev;
};

template <class T>
class Chain {
 public:
  using Entry = ChainEntry<T>;

  class Iterator {
   public:
    using value_type = T*;
    using difference_type = std::ptrdiff_t;
    Iterator() = default;
    explicit Iterator(Entry* e) : e_(e) {}
    T* operator*() const { return e_->item; }
    Iterator& operator++() {
      e_ = e_->next;
      return *this;
    }
    Iterator operator++(int) {
      Iterator old = *this;
      e_ = e_->next;
      return old;
    }
    friend bool operator==(const Iterator&, const Iterator&) = default;

   private:
    Entry* e_ = nullptr;
  };

  Entry* push(T* item, BigArray<Entry>& store) {
    Entry* e = store.create(Entry{item, head_, nullptr});
    if (head_ != nullptr) head_->prev = e;
    head_ = e;
    ++length_;
    return e;
  }

  void unlink(Entry* e, BigArray<Entry>& store) {
    if (e->prev == nullptr) {
      if (head_ != e) throw ContractViolation("chain entry is not in this chain");
      head_ = e->next;
    } else {
      e->prev->next = e->next;
    }
    if (e->next != nullptr) e->next->prev = e->prev;
    --length_;
    store.destroy(e);
  }

  Entry* head() const noexcept { return head_; }
  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return head_ == nullptr; }
  Iterator begin() const { return Iterator(head_); }
  Iterator end() const { return Iterator(); }

 private:
  Entry* head_ = nullptr;
  std::size_t length_ = 0;
};

}  // namespace gp2
