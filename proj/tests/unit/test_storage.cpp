#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "gp2/storage.hpp"

using namespace gp2;

namespace {

template <std::size_t N>
struct Blob {
  unsigned char bytes[N];
};

// Walks cumulative region capacities 2, 4, 8, ...
RegionCoord linear_coord(std::size_t j) {
  std::size_t k = 0;
  while (j >= SlotStore::region_capacity(k)) {
    j -= SlotStore::region_capacity(k);
    ++k;
  }
  return {k, j};
}

}  // namespace

TEST(SlotStore, InlineCapacityFollowsElementSize) {
  EXPECT_EQ(SlotStore(16).inline_capacity(), 10u);
  EXPECT_EQ(SlotStore(160).inline_capacity(), 1u);
  EXPECT_EQ(SlotStore(24).inline_capacity(), 6u);
  EXPECT_EQ(SlotStore(80).inline_capacity(), 2u);
  // Small elements still need room for the hole link.
  EXPECT_EQ(SlotStore(4).stride(), 16u);
  EXPECT_THROW(SlotStore(161), std::exception);
}

TEST(SlotStore, FirstAllocationIsIndexZero) {
  SlotStore s(32);
  EXPECT_EQ(s.allocate().index, 0u);
  EXPECT_EQ(s.live_count(), 1u);
}

TEST(SlotStore, FreedSlotIsReusedFirst) {
  SlotStore s(32);
  std::vector<SlotStore::Slot> v;
  for (int i = 0; i < 3; ++i) v.push_back(s.allocate());
  s.release(v[1].ptr);
  SlotStore::Slot again = s.allocate();
  EXPECT_EQ(again.index, 1u);
  EXPECT_EQ(again.ptr, v[1].ptr);
}

TEST(SlotStore, HoleListIsLifo) {
  SlotStore s(24);
  auto a = s.allocate();
  auto b = s.allocate();
  s.release(a.ptr);
  s.release(b.ptr);
  ASSERT_TRUE(s.has_hole());
  EXPECT_EQ(s.first_hole_index(), b.index);
  EXPECT_EQ(s.hole_successor_index(b.index), a.index);
}

TEST(SlotStore, FreeingOnlySlot) {
  SlotStore s(16);
  auto a = s.allocate();
  s.release(a.ptr);
  EXPECT_EQ(s.live_count(), 0u);
  EXPECT_TRUE(s.has_hole());
  EXPECT_EQ(s.first_hole_index(), 0u);
}

TEST(SlotStore, ChurnKeepsHighWater) {
  SlotStore s(40);
  void* last = nullptr;
  for (int i = 0; i < 5; ++i) last = s.allocate().ptr;
  s.release(last);
  std::size_t hw = s.high_water();
  for (int i = 0; i < 10000; ++i) s.release(s.allocate().ptr);
  EXPECT_EQ(s.high_water(), hw);
}

#if GP2_CHECKED_STORAGE
TEST(SlotStore, DoubleFreeIsDetected) {
  SlotStore s(16);
  auto a = s.allocate();
  s.release(a.ptr);
  EXPECT_THROW(s.release(a.ptr), ContractViolation);
}
#endif

TEST(SlotStore, IndexScanVisitsHighWater) {
  SlotStore empty(16);
  int visits = 0;
  empty.index_scan([&](std::size_t, void*) { ++visits; });
  EXPECT_EQ(visits, 0);

  SlotStore s(16);
  auto a = s.allocate();
  s.allocate();
  s.allocate();
  s.release(a.ptr);
  s.index_scan([&](std::size_t, void*) { ++visits; });
  EXPECT_EQ(visits, 3);

  SlotStore t(64);
  std::vector<void*> v;
  for (int i = 0; i < 7; ++i) v.push_back(t.allocate().ptr);
  for (int i = 0; i < 5; ++i) t.release(v[i]);
  visits = 0;
  t.index_scan([&](std::size_t, void*) { ++visits; });
  EXPECT_EQ(visits, 7);
}

TEST(SlotStore, RegionCoordinates) {
  // Post-inline index 5: regions of 2 and 4 slots, so region 1 offset 3.
  EXPECT_EQ(SlotStore::region_coord(5), (RegionCoord{1, 3}));
  EXPECT_EQ(SlotStore::region_coord(0), (RegionCoord{0, 0}));
  EXPECT_EQ(SlotStore::region_coord(2), (RegionCoord{1, 0}));
  for (std::size_t j = 0; j < 100000; ++j) {
    ASSERT_EQ(SlotStore::region_coord(j), linear_coord(j)) << j;
  }
}

TEST(SlotStore, AddressesAreStableAcrossGrowth) {
  SlotStore s(24);
  std::vector<SlotStore::Slot> v;
  for (int i = 0; i < 5000; ++i) {
    v.push_back(s.allocate());
    *static_cast<int*>(v.back().ptr) = i;
  }
  for (int i = 0; i < 5000; ++i) {
    EXPECT_EQ(s.at(v[i].index), v[i].ptr);
    EXPECT_EQ(*static_cast<int*>(v[i].ptr), i);
  }
}

TEST(BigArray, EmplaceAndDestroy) {
  BigArray<Blob<40>> a;
  auto [p, i] = a.emplace();
  EXPECT_EQ(i, 0u);
  EXPECT_EQ(a.at(0), p);
  a.destroy(p);
  EXPECT_EQ(a.live_count(), 0u);
  EXPECT_EQ(a.create(), p);
}

TEST(Chain, PushOrderAndLength) {
  BigArray<ChainEntry<int>> store;
  Chain<int> c;
  int a = 1, b = 2;
  c.push(&a, store);
  EXPECT_EQ(c.size(), 1u);
  c.push(&b, store);
  std::vector<int*> seen(c.begin(), c.end());
  EXPECT_EQ(seen, (std::vector<int*>{&b, &a}));
  EXPECT_EQ(store.live_count(), 2u);
}

TEST(Chain, Unlink) {
  BigArray<ChainEntry<int>> store;
  Chain<int> c;
  int a = 1, b = 2, d = 3;
  auto* ea = c.push(&a, store);
  auto* eb = c.push(&b, store);
  auto* ed = c.push(&d, store);
  c.unlink(eb, store);
  EXPECT_EQ(std::vector<int*>(c.begin(), c.end()), (std::vector<int*>{&d, &a}));
  c.unlink(ed, store);
  EXPECT_EQ(c.head()->item, &a);
  c.unlink(ea, store);
  EXPECT_TRUE(c.empty());
  EXPECT_EQ(store.live_count(), 0u);
}

TEST(Chain, ManyEntries) {
  BigArray<ChainEntry<int>> store;
  Chain<int> c;
  std::vector<int> xs(1000);
  for (int& x : xs) c.push(&x, store);
  EXPECT_EQ(c.size(), 1000u);
  EXPECT_EQ(store.live_count(), 1000u);
  std::set<int*> distinct(c.begin(), c.end());
  EXPECT_EQ(distinct.size(), 1000u);
}
