// Host label values, marks and the interning pool.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace gp2 {

enum class Mark : std::uint8_t { kNone, kRed, kGreen, kBlue, kGrey, kDashed, kAny };

std::string_view mark_name(Mark m);
std::optional<Mark> parse_mark(std::string_view name);
inline bool is_node_mark(Mark m) { return m != Mark::kDashed && m != Mark::kAny; }
inline bool is_edge_mark(Mark m) { return m != Mark::kGrey && m != Mark::kAny; }

using Atom = std::variant<std::int32_t, std::string>;
using HostList = std::vector<Atom>;
using AtomSpan = std::span<const Atom>;

inline bool is_int(const Atom& a) { return std::holds_alternative<std::int32_t>(a); }
inline bool is_string(const Atom& a) { return std::holds_alternative<std::string>(a); }

bool lists_equal(AtomSpan a, AtomSpan b);
std::size_t hash_list(AtomSpan atoms);
std::string format_atom(const Atom& a);
// "empty" for the empty list, otherwise atoms joined by ':'.
std::string format_list(AtomSpan atoms);

struct LabelRecord {
  HostList atoms;
  std::size_t hash = 0;
  std::uint32_t refs = 0;
};

inline AtomSpan atoms_of(const LabelRecord* r) {
  return r == nullptr ? AtomSpan{} : AtomSpan(r->atoms);
}

// Identical lists share one record; nullptr stands for the empty list.
// With counting disabled records are never reclaimed.
class LabelPool {
 public:
  explicit LabelPool(bool counting = true) : counting_(counting) {}
  LabelPool(const LabelPool&) = delete;
  LabelPool& operator=(const LabelPool&) = delete;

  const LabelRecord* intern(AtomSpan atoms);
  void retain(const LabelRecord* r);
  void release(const LabelRecord* r);

  std::size_t size() const noexcept { return table_.size(); }
  bool counting() const noexcept { return counting_; }

 private:
  std::unordered_multimap<std::size_t, std::unique_ptr<LabelRecord>> table_;
  bool counting_;
};

}  // namespace gp2
