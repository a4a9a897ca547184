#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>

#include "gp2/graph.hpp"

namespace gp2 {
namespace {

struct View {
  std::vector<Node*> nodes;
  std::unordered_map<const Node*, int> pos;
  std::vector<std::vector<int>> nbrs;  // undirected, deduplicated
  std::vector<std::uint64_t> colour;
};

std::string item_key(AtomSpan atoms, Mark m, bool labels) {
  std::string k = labels ? format_list(atoms) : std::string();
  k += '#';
  k += mark_name(m);
  return k;
}

View make_view(const Graph& g) {
  View v;
  v.nodes = g.nodes();
  for (int i = 0; i < static_cast<int>(v.nodes.size()); ++i) v.pos[v.nodes[i]] = i;
  v.nbrs.resize(v.nodes.size());
  for (std::size_t i = 0; i < v.nodes.size(); ++i) {
    for (Edge* e : v.nodes[i]->out_edges) v.nbrs[i].push_back(v.pos[e->target]);
    for (Edge* e : v.nodes[i]->in_edges) v.nbrs[i].push_back(v.pos[e->source]);
    std::sort(v.nbrs[i].begin(), v.nbrs[i].end());
    v.nbrs[i].erase(std::unique(v.nbrs[i].begin(), v.nbrs[i].end()), v.nbrs[i].end());
  }
  return v;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  return h ^ (x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

// Colour refinement over both graphs with a shared hash.
void refine(const Graph& ga, View& a, const Graph& gb, View& b, bool labels) {
  auto init = [&](const Graph& g, View& v) {
    v.colour.resize(v.nodes.size());
    for (std::size_t i = 0; i < v.nodes.size(); ++i) {
      const Node* n = v.nodes[i];
      std::uint64_t h = std::hash<std::string>{}(item_key(n->atoms(), n->mark, labels));
      h = mix(h, g.is_root(n));
      h = mix(h, n->indegree);
      h = mix(h, n->outdegree);
      v.colour[i] = h;
    }
  };
  init(ga, a);
  init(gb, b);
  auto step = [&](View& v) {
    std::vector<std::uint64_t> next(v.nodes.size());
    for (std::size_t i = 0; i < v.nodes.size(); ++i) {
      std::vector<std::uint64_t> outs, ins;
      for (Edge* e : v.nodes[i]->out_edges) {
        outs.push_back(mix(v.colour[v.pos[e->target]],
                           std::hash<std::string>{}(item_key(e->atoms(), e->mark, labels))));
      }
      for (Edge* e : v.nodes[i]->in_edges) {
        ins.push_back(mix(v.colour[v.pos[e->source]],
                          std::hash<std::string>{}(item_key(e->atoms(), e->mark, labels))));
      }
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      std::uint64_t h = v.colour[i];
      for (auto x : outs) h = mix(h, x);
      h = mix(h, 0xabcdefull);
      for (auto x : ins) h = mix(h, x);
      next[i] = h;
    }
    v.colour = std::move(next);
  };
  auto classes = [](const View& v) {
    std::vector<std::uint64_t> c = v.colour;
    std::sort(c.begin(), c.end());
    return std::unique(c.begin(), c.end()) - c.begin();
  };
  auto before = classes(a);
  for (std::size_t round = 0; round < a.nodes.size(); ++round) {
    step(a);
    step(b);
    auto after = classes(a);
    if (after == before) break;
    before = after;
  }
}

std::vector<std::string> edges_between(const Node* s, const Node* t, bool labels) {
  std::vector<std::string> keys;
  for (Edge* e : s->out_edges) {
    if (e->target == t) keys.push_back(item_key(e->atoms(), e->mark, labels));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

struct Search {
  const View& a;
  const View& b;
  bool labels;
  std::vector<int> order;
  std::vector<int> map;   // a index -> b index
  std::vector<bool> used;

  bool consistent(int u, int v) const {
    const Node* nu = a.nodes[u];
    const Node* nv = b.nodes[v];
    if (edges_between(nu, nu, labels) != edges_between(nv, nv, labels)) return false;
    for (int w : a.nbrs[u]) {
      if (w == u || map[w] < 0) continue;
      const Node* nw = a.nodes[w];
      const Node* mw = b.nodes[map[w]];
      if (edges_between(nu, nw, labels) != edges_between(nv, mw, labels)) return false;
      if (edges_between(nw, nu, labels) != edges_between(mw, nv, labels)) return false;
    }
    // Every mapped neighbour of v must come from a neighbour of u.
    for (int x : b.nbrs[v]) {
      if (x == v || !used[x]) continue;
      bool found = false;
      for (int w : a.nbrs[u]) {
        if (map[w] == x) found = true;
      }
      if (!found) return false;
    }
    return true;
  }

  bool run(std::size_t k) {
    if (k == order.size()) return true;
    int u = order[k];
    int anchor = -1;
    for (int w : a.nbrs[u]) {
      if (w != u && map[w] >= 0) {
        anchor = w;
        break;
      }
    }
    auto attempt = [&](int v) {
      if (used[v] || a.colour[u] != b.colour[v] || !consistent(u, v)) return false;
      map[u] = v;
      used[v] = true;
      if (run(k + 1)) return true;
      map[u] = -1;
      used[v] = false;
      return false;
    };
    if (anchor >= 0) {
      for (int v : b.nbrs[map[anchor]]) {
        if (attempt(v)) return true;
      }
      return false;
    }
    for (int v = 0; v < static_cast<int>(b.nodes.size()); ++v) {
      if (attempt(v)) return true;
    }
    return false;
  }
};

}  // namespace

bool graphs_isomorphic(const Graph& ga, const Graph& gb, bool compare_labels) {
  if (ga.node_count() != gb.node_count() || ga.edge_count() != gb.edge_count() ||
      ga.root_count() != gb.root_count()) {
    return false;
  }
  View a = make_view(ga);
  View b = make_view(gb);
  refine(ga, a, gb, b, compare_labels);
  std::vector<std::uint64_t> ca = a.colour, cb = b.colour;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return false;

  Search s{a, b, compare_labels, {}, std::vector<int>(a.nodes.size(), -1),
           std::vector<bool>(b.nodes.size(), false)};
  // Breadth-first order keeps each next node adjacent to a mapped one.
  std::vector<bool> seen(a.nodes.size(), false);
  for (std::size_t start = 0; start < a.nodes.size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> queue{static_cast<int>(start)};
    seen[start] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      s.order.push_back(u);
      for (int w : a.nbrs[u]) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return s.run(0);
}

}  // namespace gp2
