#include <algorithm>
#include <set>

#include "gp2/match.hpp"

namespace gp2 {
namespace {

bool node_ok(const PatternNode& pn, const Graph& g, const Node* h, RootMode mode) {
  bool root = g.is_root(h);
  if (pn.root && !root) return false;
  if (!pn.root && root && mode == RootMode::kReflect) return false;
  return pn.label.mark == Mark::kAny || pn.label.mark == h->mark;
}

bool edge_fits(const PatternEdge& pe, const Edge* h, const std::vector<Node*>& nodes) {
  if (pe.label.mark != Mark::kAny && pe.label.mark != h->mark) return false;
  const Node* s = nodes[pe.source];
  const Node* t = nodes[pe.target];
  if (h->source == s && h->target == t) return true;
  return pe.bidirectional && h->source == t && h->target == s;
}

// Labels from scratch in declaration order; nodes then edges.
bool assign_labels(const Rule& rule, const std::vector<Node*>& nodes,
                   const std::vector<Edge*>& edges, Assignment& a) {
  a.reset(rule.variables.size());
  std::vector<int> trail;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!label_match(rule.lhs.nodes[i].label, rule, nodes[i]->atoms(), a, trail)) return false;
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!label_match(rule.lhs.edges[i].label, rule, edges[i]->atoms(), a, trail)) return false;
  }
  return true;
}

// Deleted nodes may only touch edges inside the match.
bool no_dangling(const Rule& rule, const std::vector<Node*>& nodes, const std::vector<Edge*>& edges) {
  std::set<const Edge*> inside(edges.begin(), edges.end());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!rule.deletes_node(static_cast<int>(i))) continue;
    for (const Edge* e : nodes[i]->out_edges) {
      if (inside.count(e) == 0) return false;
    }
    for (const Edge* e : nodes[i]->in_edges) {
      if (inside.count(e) == 0) return false;
    }
  }
  return true;
}

struct Enumerator {
  const Rule& rule;
  const Graph& g;
  RootMode mode;
  std::vector<Node*> host_nodes;
  std::vector<Edge*> host_edges;
  std::vector<Node*> nodes;
  std::vector<Edge*> edges;
  std::vector<Match> out;

  void nodes_from(std::size_t p) {
    if (p == rule.lhs.nodes.size()) {
      edges_from(0);
      return;
    }
    for (Node* h : host_nodes) {
      if (std::find(nodes.begin(), nodes.begin() + p, h) != nodes.begin() + p) continue;
      if (!node_ok(rule.lhs.nodes[p], g, h, mode)) continue;
      nodes[p] = h;
      nodes_from(p + 1);
    }
    nodes[p] = nullptr;
  }

  void edges_from(std::size_t p) {
    if (p == rule.lhs.edges.size()) {
      accept();
      return;
    }
    for (Edge* h : host_edges) {
      if (std::find(edges.begin(), edges.begin() + p, h) != edges.begin() + p) continue;
      if (!edge_fits(rule.lhs.edges[p], h, nodes)) continue;
      edges[p] = h;
      edges_from(p + 1);
    }
    edges[p] = nullptr;
  }

  void accept() {
    Match m;
    if (!assign_labels(rule, nodes, edges, m.assignment)) return;
    if (!no_dangling(rule, nodes, edges)) return;
    m.nodes = nodes;
    m.edges = edges;
    if (rule.condition && !eval_cond(*rule.condition, rule, m.assignment, m.view())) return;
    out.push_back(std::move(m));
  }
};

}  // namespace

std::vector<Match> brute_force_match(const Rule& rule, const Graph& g, RootMode mode) {
  Enumerator en{rule, g, mode, g.nodes(), g.edges(), {}, {}, {}};
  en.nodes.assign(rule.lhs.nodes.size(), nullptr);
  en.edges.assign(rule.lhs.edges.size(), nullptr);
  en.nodes_from(0);
  return std::move(en.out);
}

std::optional<std::string> audit_match(const Rule& rule, const Graph& g, const Match& m,
                                       RootMode mode) {
  const auto& L = rule.lhs;
  if (m.nodes.size() != L.nodes.size() || m.edges.size() != L.edges.size()) {
    return "match has the wrong number of images";
  }
  std::set<const Node*> seen_nodes;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const Node* h = m.nodes[i];
    if (h == nullptr || !g.in_graph(h)) return "node image " + L.nodes[i].id + " is not in the graph";
    if (!seen_nodes.insert(h).second) return "node map is not injective";
    if (!node_ok(L.nodes[i], g, h, mode)) return "root or mark mismatch at node " + L.nodes[i].id;
    if (g.matched(h)) return "matched flag left set on node " + L.nodes[i].id;
  }
  std::set<const Edge*> seen_edges;
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    const Edge* h = m.edges[i];
    if (h == nullptr || !h->live()) return "edge image " + L.edges[i].id + " is not in the graph";
    if (!seen_edges.insert(h).second) return "edge map is not injective";
    if (!edge_fits(L.edges[i], h, m.nodes)) return "edge " + L.edges[i].id + " does not commute";
    if (h->flags & edge_flag::kMatched) return "matched flag left set on edge " + L.edges[i].id;
  }
  Assignment fresh;
  if (!assign_labels(rule, m.nodes, m.edges, fresh)) return "labels do not match";
  for (std::size_t v = 0; v < rule.variables.size(); ++v) {
    int vi = static_cast<int>(v);
    if (fresh.bound(vi) != m.assignment.bound(vi)) return "assignment binds different variables";
    if (fresh.bound(vi) && !lists_equal(fresh.value(vi), m.assignment.value(vi))) {
      return "variable " + rule.variables[v].name + " has the wrong value";
    }
  }
  if (!no_dangling(rule, m.nodes, m.edges)) return "dangling condition violated";
  if (rule.condition && !eval_cond(*rule.condition, rule, fresh, m.view())) {
    return "condition does not hold";
  }
  return std::nullopt;
}

}  // namespace gp2
