#include "gp2/label.hpp"

#include <functional>

namespace gp2 {

std::string_view mark_name(Mark m) {
  switch (m) {
    case Mark::kNone: return "none";
    case Mark::kRed: return "red";
    case Mark::kGreen: return "green";
    case Mark::kBlue: return "blue";
    case Mark::kGrey: return "grey";
    case Mark::kDashed: return "dashed";
    case Mark::kAny: return "any";
  }
  return "none";
}

std::optional<Mark> parse_mark(std::string_view name) {
  if (name == "red") return Mark::kRed;
  if (name == "green") return Mark::kGreen;
  if (name == "blue") return Mark::kBlue;
  if (name == "grey") return Mark::kGrey;
  if (name == "dashed") return Mark::kDashed;
  if (name == "any") return Mark::kAny;
  return std::nullopt;
}

bool lists_equal(AtomSpan a, AtomSpan b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

std::size_t hash_list(AtomSpan atoms) {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const Atom& a : atoms) {
    std::size_t x = is_int(a) ? std::hash<std::int32_t>{}(std::get<std::int32_t>(a))
                              : std::hash<std::string>{}(std::get<std::string>(a)) ^ 0x5bd1e995u;
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string format_atom(const Atom& a) {
  if (is_int(a)) return std::to_string(std::get<std::int32_t>(a));
  return "\"" + std::get<std::string>(a) + "\"";
}

std::string format_list(AtomSpan atoms) {
  if (atoms.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) out += ':';
    out += format_atom(atoms[i]);
  }
  return out;
}

const LabelRecord* LabelPool::intern(AtomSpan atoms) {
  if (atoms.empty()) return nullptr;
  std::size_t h = hash_list(atoms);
  auto [lo, hi] = table_.equal_range(h);
  for (auto it = lo; it != hi; ++it) {
    LabelRecord* r = it->second.get();
    if (lists_equal(r->atoms, atoms)) {
      if (counting_) ++r->refs;
      return r;
    }
  }
  auto rec = std::make_unique<LabelRecord>();
  rec->atoms.assign(atoms.begin(), atoms.end());
  rec->hash = h;
  rec->refs = 1;
  const LabelRecord* out = rec.get();
  table_.emplace(h, std::move(rec));
  return out;
}

void LabelPool::retain(const LabelRecord* r) {
  if (r != nullptr && counting_) ++const_cast<LabelRecord*>(r)->refs;
}

void LabelPool::release(const LabelRecord* r) {
  if (r == nullptr || !counting_) return;
  auto* rec = const_cast<LabelRecord*>(r);
  if (--rec->refs > 0) return;
  auto [lo, hi] = table_.equal_range(rec->hash);
  for (auto it = lo; it != hi; ++it) {
    if (it->second.get() == rec) {
      table_.erase(it);
      return;
    }
  }
}

}  // namespace gp2
