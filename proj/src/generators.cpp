#include <array>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "gp2/bench.hpp"

namespace gp2 {

namespace {

using Kind = GeneratorSpec::Kind;

struct KindInfo {
  Kind kind;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<KindInfo, 7> kKinds{{
    {Kind::kDiscrete, "discrete", 1},
    {Kind::kFullBinaryTree, "full_binary_tree", 1},
    {Kind::kGrid, "grid", 2},
    {Kind::kLinkedList, "linked_list", 1},
    {Kind::kStar, "star", 1},
    {Kind::kSierpinski, "sierpinski", 1},
    {Kind::kSeed, "seed", 1},
}};

const KindInfo& info(Kind k) {
  for (const KindInfo& i : kKinds) {
    if (i.kind == k) return i;
  }
  throw std::invalid_argument("unknown generator kind");
}

void check_params(const GeneratorSpec& s) {
  const KindInfo& i = info(s.kind);
  if (s.params.size() != i.arity) {
    throw std::invalid_argument(std::string(i.name) + " takes " + std::to_string(i.arity) +
                                " parameter(s)");
  }
  for (std::uint64_t p : s.params) {
    if (p == 0 && s.kind != Kind::kSeed) {
      throw std::invalid_argument(std::string(i.name) + " parameters must be positive");
    }
  }
  if (s.kind == Kind::kSeed &&
      s.params[0] > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
    throw std::invalid_argument("seed label does not fit an int");
  }
}

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::length_error("generator size overflows");
  return r;
}

std::uint64_t pow3(std::uint64_t l) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < l; ++i) r = mul(r, 3);
  return r;
}

}  // namespace

std::string_view generator_name(GeneratorSpec::Kind k) { return info(k).name; }

std::string GeneratorSpec::text() const {
  std::string out(generator_name(kind));
  out += '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(params[i]);
  }
  out += ')';
  return out;
}

std::uint64_t GeneratorSpec::nominal_size() const {
  if (kind == Kind::kSeed) return params.at(0);
  return expected_nodes(*this, std::numeric_limits<std::uint64_t>::max());
}

GeneratorSpec parse_generator_spec(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  std::string_view t = trim(text);
  std::size_t open = t.find('(');
  if (open == std::string_view::npos || t.back() != ')') {
    throw std::invalid_argument("bad generator spec '" + std::string(text) + "'");
  }
  std::string_view name = trim(t.substr(0, open));
  GeneratorSpec s;
  bool known = false;
  for (const KindInfo& i : kKinds) {
    if (i.name == name) {
      s.kind = i.kind;
      known = true;
    }
  }
  if (!known) throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
  std::string_view args = t.substr(open + 1, t.size() - open - 2);
  while (!trim(args).empty()) {
    std::size_t comma = args.find(',');
    std::string_view a = trim(args.substr(0, comma));
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(a.data(), a.data() + a.size(), v);
    if (ec != std::errc() || p != a.data() + a.size() || a.empty()) {
      throw std::invalid_argument("bad generator parameter '" + std::string(a) + "'");
    }
    s.params.push_back(v);
    if (comma == std::string_view::npos) break;
    args.remove_prefix(comma + 1);
  }
  check_params(s);
  return s;
}

std::uint64_t expected_nodes(const GeneratorSpec& s, std::uint64_t max_nodes) {
  check_params(s);
  std::uint64_t n = 0;
  switch (s.kind) {
    case Kind::kDiscrete:
    case Kind::kLinkedList:
    case Kind::kStar:
      n = s.params[0];
      break;
    case Kind::kFullBinaryTree:
      if (s.params[0] >= 64) throw std::length_error("tree depth too large");
      n = (std::uint64_t{1} << s.params[0]) - 1;
      break;
    case Kind::kGrid:
      n = mul(s.params[0], s.params[1]);
      break;
    case Kind::kSierpinski: {
      std::uint64_t p = pow3(s.params[0]);
      n = p / 2 + 2;  // (3^l + 3) / 2
      break;
    }
    case Kind::kSeed:
      n = 1;
      break;
  }
  if (n > max_nodes) {
    throw std::length_error(s.text() + " exceeds the node limit of " + std::to_string(max_nodes));
  }
  return n;
}

std::uint64_t expected_edges(const GeneratorSpec& s) {
  std::uint64_t n = expected_nodes(s, std::numeric_limits<std::uint64_t>::max());
  switch (s.kind) {
    case Kind::kDiscrete:
    case Kind::kSeed:
      return 0;
    case Kind::kFullBinaryTree:
    case Kind::kLinkedList:
    case Kind::kStar:
      return n - 1;
    case Kind::kGrid:
      return 2 * n - s.params[0] - s.params[1];
    case Kind::kSierpinski:
      return pow3(s.params[0]);
  }
  return 0;
}

std::unique_ptr<Graph> generate(const GeneratorSpec& s, GraphOptions opts, std::uint64_t max_nodes) {
  std::uint64_t n = expected_nodes(s, max_nodes);
  auto g = std::make_unique<Graph>(opts);
  std::vector<Node*> v;
  auto fresh = [&] { return g->add_node(AtomSpan{}); };
  auto edge = [&](Node* a, Node* b) { g->add_edge(a, b, AtomSpan{}); };
  if (s.kind != Kind::kSierpinski && s.kind != Kind::kSeed) {
    v.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) v.push_back(fresh());
  }
  switch (s.kind) {
    case Kind::kDiscrete:
      break;
    case Kind::kFullBinaryTree:
      for (std::uint64_t i = 0; 2 * i + 1 < n; ++i) {
        edge(v[i], v[2 * i + 1]);
        if (2 * i + 2 < n) edge(v[i], v[2 * i + 2]);
      }
      break;
    case Kind::kGrid: {
      std::uint64_t w = s.params[0], h = s.params[1];
      for (std::uint64_t y = 0; y < h; ++y) {
        for (std::uint64_t x = 0; x < w; ++x) {
          if (x + 1 < w) edge(v[y * w + x], v[y * w + x + 1]);
          if (y + 1 < h) edge(v[y * w + x], v[(y + 1) * w + x]);
        }
      }
      break;
    }
    case Kind::kLinkedList:
      for (std::uint64_t i = 0; i + 1 < n; ++i) edge(v[i], v[i + 1]);
      break;
    case Kind::kStar:
      for (std::uint64_t k = 1; k < n; ++k) {
        if (k % 2 == 1) {
          edge(v[0], v[k]);
        } else {
          edge(v[k], v[0]);
        }
      }
      break;
    case Kind::kSierpinski: {
      // Triangle (top, left, right): top->right, top->left, right->left.
      struct Tri {
        Node* t;
        Node* a;
        Node* b;
      };
      std::vector<Tri> tris{{fresh(), fresh(), fresh()}};
      for (std::uint64_t level = 1; level < s.params[0]; ++level) {
        std::vector<Tri> next;
        next.reserve(tris.size() * 3);
        for (const Tri& tr : tris) {
          Node* h = fresh();
          Node* i = fresh();
          Node* k = fresh();
          next.push_back({tr.t, h, i});
          next.push_back({h, tr.a, k});
          next.push_back({i, k, tr.b});
        }
        tris = std::move(next);
      }
      for (const Tri& tr : tris) {
        edge(tr.t, tr.b);
        edge(tr.t, tr.a);
        edge(tr.b, tr.a);
      }
      break;
    }
    case Kind::kSeed: {
      Atom a = static_cast<std::int32_t>(s.params[0]);
      g->add_node(AtomSpan(&a, 1), Mark::kNone, true);
      break;
    }
  }
  return g;
}

}  // namespace gp2
