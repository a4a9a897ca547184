#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "gp2/textio.hpp"

namespace gp2::testkit {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Mark random_node_mark(Rng& rng) {
  static constexpr Mark kMarks[] = {Mark::kNone, Mark::kNone, Mark::kNone, Mark::kRed,
                                    Mark::kGreen, Mark::kBlue, Mark::kGrey};
  return kMarks[uniform(rng, 0, 6)];
}

Mark random_edge_mark(Rng& rng) {
  static constexpr Mark kMarks[] = {Mark::kNone, Mark::kNone, Mark::kNone, Mark::kRed,
                                    Mark::kGreen, Mark::kBlue, Mark::kDashed};
  return kMarks[uniform(rng, 0, 6)];
}

}  // namespace

HostList random_label(Rng& rng) {
  switch (uniform(rng, 0, 6)) {
    case 0:
    case 1:
      return {};
    case 2:
      return {Atom(std::int32_t{uniform(rng, 0, 3)})};
    case 3:
      return {Atom(std::int32_t{uniform(rng, -1, 5)})};
    case 4:
      return {Atom(std::string(uniform(rng, 0, 1) ? "a" : "bc"))};
    case 5:
      return {Atom(std::int32_t{1}), Atom(std::int32_t{uniform(rng, 1, 2)})};
    default:
      return {Atom(std::string("a")), Atom(std::int32_t{uniform(rng, 0, 2)})};
  }
}

std::unique_ptr<Graph> build(const Digraph& d, Rng* rng, HostStyle style) {
  auto g = std::make_unique<Graph>();
  std::vector<Node*> v;
  for (int i = 0; i < d.n; ++i) {
    HostList l = style.labels && rng ? random_label(*rng) : HostList{};
    Mark m = style.marks && rng ? random_node_mark(*rng) : Mark::kNone;
    bool root = style.roots && rng && uniform(*rng, 0, 3) == 0;
    v.push_back(g->add_node(l, m, root));
  }
  for (auto [s, t] : d.edges) {
    HostList l = style.labels && rng ? random_label(*rng) : HostList{};
    Mark m = style.marks && rng ? random_edge_mark(*rng) : Mark::kNone;
    g->add_edge(v[s], v[t], l, m);
  }
  return g;
}

Digraph shape_of(const Graph& g) {
  Digraph d;
  std::unordered_map<const Node*, int> id;
  for (Node* n : g.nodes()) id.emplace(n, d.n++);
  for (Edge* e : g.edges()) d.edges.emplace_back(id.at(e->source), id.at(e->target));
  return d;
}

std::unique_ptr<Graph> copy_graph(const Graph& g) {
  return std::move(parse_host_graph(print_graph(g)).graph);
}

Digraph random_digraph(Rng& rng, int max_nodes, int max_edges) {
  Digraph d;
  d.n = uniform(rng, 0, max_nodes);
  if (d.n == 0) return d;
  int m = uniform(rng, 0, max_edges);
  for (int i = 0; i < m; ++i) d.edges.emplace_back(uniform(rng, 0, d.n - 1), uniform(rng, 0, d.n - 1));
  return d;
}

Digraph random_dag(Rng& rng, int max_nodes, int max_out) {
  Digraph d;
  d.n = uniform(rng, 1, max_nodes);
  for (int i = 0; i + 1 < d.n; ++i) {
    int k = uniform(rng, 0, max_out);
    for (int j = 0; j < k; ++j) d.edges.emplace_back(i, uniform(rng, i + 1, d.n - 1));
  }
  return shuffled(rng, d);
}

Digraph random_arborescence(Rng& rng, int max_nodes) {
  Digraph d;
  d.n = uniform(rng, 1, max_nodes);
  for (int i = 1; i < d.n; ++i) d.edges.emplace_back(uniform(rng, 0, i - 1), i);
  return shuffled(rng, d);
}

Digraph random_series_parallel(Rng& rng, int max_edges) {
  // Terminals are nodes 0 and 1; compose recursively.
  struct Part {
    Digraph d;
    int s, t;
  };
  auto edge = [] { return Part{Digraph{2, {{0, 1}}}, 0, 1}; };
  auto merge = [](const Part& a, const Part& b, bool series) {
    Part out;
    out.d.n = a.d.n;
    out.d.edges = a.d.edges;
    std::vector<int> map(b.d.n, -1);
    map[b.s] = series ? a.t : a.s;
    if (!series) map[b.t] = a.t;
    for (int i = 0; i < b.d.n; ++i) {
      if (map[i] < 0) map[i] = out.d.n++;
    }
    for (auto [x, y] : b.d.edges) out.d.edges.emplace_back(map[x], map[y]);
    out.s = a.s;
    out.t = series ? map[b.t] : a.t;
    return out;
  };
  std::vector<Part> parts;
  int target = uniform(rng, 1, max_edges);
  for (int i = 0; i < target; ++i) parts.push_back(edge());
  while (parts.size() > 1) {
    std::size_t i = uniform(rng, 0, static_cast<int>(parts.size()) - 1);
    std::size_t j = uniform(rng, 0, static_cast<int>(parts.size()) - 2);
    if (j >= i) ++j;
    Part m = merge(parts[i], parts[j], uniform(rng, 0, 1) == 0);
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
    parts.push_back(std::move(m));
  }
  return shuffled(rng, parts[0].d);
}

Digraph perturb(Rng& rng, Digraph d) {
  switch (uniform(rng, 0, 3)) {
    case 0:
      if (d.n > 0) d.edges.emplace_back(uniform(rng, 0, d.n - 1), uniform(rng, 0, d.n - 1));
      break;
    case 1:
      if (!d.edges.empty()) d.edges.erase(d.edges.begin() + uniform(rng, 0, static_cast<int>(d.edges.size()) - 1));
      break;
    case 2:
      if (!d.edges.empty()) {
        auto& e = d.edges[uniform(rng, 0, static_cast<int>(d.edges.size()) - 1)];
        std::swap(e.first, e.second);
      }
      break;
    default:
      ++d.n;
      break;
  }
  return d;
}

Digraph shuffled(Rng& rng, const Digraph& d) {
  std::vector<int> p(d.n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  Digraph out{d.n, {}};
  for (auto [s, t] : d.edges) out.edges.emplace_back(p[s], p[t]);
  std::shuffle(out.edges.begin(), out.edges.end(), rng);
  return out;
}

std::unique_ptr<Graph> random_host(Rng& rng, int max_nodes, int max_edges) {
  Digraph d = random_digraph(rng, max_nodes, max_edges);
  return build(d, &rng, HostStyle{true, true, true});
}

bool oracle_discrete(const Digraph& d) { return d.edges.empty(); }

bool oracle_acyclic(const Digraph& d) {
  // Kahn's algorithm.
  std::vector<int> indeg(d.n, 0);
  std::vector<std::vector<int>> out(d.n);
  for (auto [s, t] : d.edges) {
    out[s].push_back(t);
    ++indeg[t];
  }
  std::vector<int> ready;
  for (int i = 0; i < d.n; ++i) {
    if (indeg[i] == 0) ready.push_back(i);
  }
  int seen = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++seen;
    for (int w : out[v]) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  return seen == d.n;
}

bool oracle_bin_dag(const Digraph& d) {
  std::vector<int> outdeg(d.n, 0);
  for (auto e : d.edges) ++outdeg[e.first];
  for (int k : outdeg) {
    if (k > 2) return false;
  }
  return oracle_acyclic(d);
}

bool oracle_weakly_connected(const Digraph& d) {
  std::vector<int> parent(d.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = d.n;
  for (auto [s, t] : d.edges) {
    int a = find(s), b = find(t);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components <= 1;
}

bool oracle_arborescence(const Digraph& d) {
  if (d.n == 0 || static_cast<int>(d.edges.size()) != d.n - 1) return false;
  std::vector<int> indeg(d.n, 0);
  for (auto e : d.edges) ++indeg[e.second];
  int sources = 0;
  for (int k : indeg) {
    if (k == 0) ++sources;
    if (k > 1) return false;
  }
  return sources == 1 && oracle_weakly_connected(d);
}

bool oracle_series_parallel(const Digraph& d) {
  int m = static_cast<int>(d.edges.size());
  if (m == 0 || m > 31 || d.n > 32) return false;
  std::vector<int> deg(d.n, 0);
  for (auto [s, t] : d.edges) {
    if (s == t) return false;
    ++deg[s];
    ++deg[t];
  }
  for (int k : deg) {
    if (k == 0) return false;
  }
  using Mask = std::uint32_t;
  auto nodes_of = [&](Mask mask) {
    std::uint32_t ns = 0;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) ns |= 1u << d.edges[i].first | 1u << d.edges[i].second;
    }
    return ns;
  };
  // Edge classes of mask joined through nodes outside `cut`.
  auto components = [&](Mask mask, std::uint32_t cut) {
    std::vector<Mask> out;
    Mask rest = mask;
    while (rest != 0) {
      Mask comp = rest & (~rest + 1);
      for (bool grew = true; grew;) {
        grew = false;
        std::uint32_t inner = nodes_of(comp) & ~cut;
        for (int i = 0; i < m; ++i) {
          Mask bit = Mask{1} << i;
          if (!(rest & bit) || (comp & bit)) continue;
          if ((1u << d.edges[i].first | 1u << d.edges[i].second) & inner) {
            comp |= bit;
            grew = true;
          }
        }
      }
      out.push_back(comp);
      rest &= ~comp;
    }
    return out;
  };
  std::map<std::tuple<Mask, int, int>, bool> memo;
  // sp(mask, s, t): the edges in mask form a two-terminal graph from s to t.
  auto sp = [&](auto&& self, Mask mask, int s, int t) -> bool {
    auto key = std::make_tuple(mask, s, t);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = false;
    std::uint32_t ns = nodes_of(mask);
    std::uint32_t terminals = 1u << s | 1u << t;
    if ((ns & terminals) != terminals) {
      ok = false;
    } else if ((mask & (mask - 1)) == 0) {
      int i = __builtin_ctz(mask);
      ok = d.edges[i].first == s && d.edges[i].second == t;
    } else {
      std::vector<Mask> parts = components(mask, terminals);
      if (parts.size() > 1) {
        // Parallel: the pieces meeting only at s and t must each be two-terminal.
        ok = true;
        for (Mask p : parts) ok = ok && self(self, p, s, t);
      } else {
        // Series: the split at a cut node c is forced.
        for (int c = 0; c < d.n && !ok; ++c) {
          if (c == s || c == t || !(ns >> c & 1)) continue;
          Mask left = 0;
          for (Mask p : components(mask, 1u << c)) {
            if (nodes_of(p) >> s & 1) left |= p;
          }
          Mask right = mask & ~left;
          if (right == 0 || (nodes_of(left) & nodes_of(right)) != 1u << c) continue;
          ok = self(self, left, s, c) && self(self, right, c, t);
        }
      }
    }
    memo.emplace(key, ok);
    return ok;
  };
  Mask all = (Mask{1} << m) - 1;
  for (int s = 0; s < d.n; ++s) {
    for (int t = 0; t < d.n; ++t) {
      if (s != t && sp(sp, all, s, t)) return true;
    }
  }
  return false;
}

std::vector<std::pair<int, int>> missing_closure_edges(const Digraph& d) {
  // Warshall over path length >= 1.
  std::vector<std::vector<char>> r(d.n, std::vector<char>(d.n, 0));
  std::vector<std::vector<char>> direct(d.n, std::vector<char>(d.n, 0));
  for (auto [s, t] : d.edges) r[s][t] = direct[s][t] = 1;
  for (int k = 0; k < d.n; ++k) {
    for (int i = 0; i < d.n; ++i) {
      if (!r[i][k]) continue;
      for (int j = 0; j < d.n; ++j) {
        if (r[k][j]) r[i][j] = 1;
      }
    }
  }
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) {
      if (i != j && r[i][j] && !direct[i][j]) out.emplace_back(i, j);
    }
  }
  return out;
}

std::unique_ptr<Graph> closure_of(const Graph& g) {
  std::unique_ptr<Graph> c = copy_graph(g);
  std::vector<Node*> nodes = c->nodes();
  for (auto [s, t] : missing_closure_edges(shape_of(*c))) c->add_edge(nodes[s], nodes[t], AtomSpan{});
  return c;
}

}  // namespace gp2::testkit
