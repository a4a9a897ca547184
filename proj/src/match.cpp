#include "gp2/match.hpp"

namespace gp2 {

SearchPlan compile_plan(const Rule& rule, bool optimize) {
  const PatternGraph& L = rule.lhs;
  SearchPlan plan;
  using K = PlanStep::Kind;
  if (!optimize) {
    for (std::size_t i = 0; i < L.nodes.size(); ++i) {
      plan.steps.push_back({L.nodes[i].root ? K::kMatchRoot : K::kMatchNode, static_cast<int>(i)});
    }
    for (std::size_t i = 0; i < L.edges.size(); ++i) {
      const PatternEdge& e = L.edges[i];
      int ei = static_cast<int>(i);
      if (e.source == e.target) {
        plan.steps.push_back({K::kExtendLoop, e.source, ei, e.source, true});
      } else {
        plan.steps.push_back({e.bidirectional ? K::kExtendBidirectional : K::kExtendOut, e.source, ei,
                              e.target, true});
      }
    }
    return plan;
  }

  std::vector<bool> node_done(L.nodes.size(), false);
  std::vector<bool> edge_done(L.edges.size(), false);
  std::vector<int> queue;
  for (std::size_t i = 0; i < L.nodes.size(); ++i) {
    if (L.nodes[i].root) {
      plan.steps.push_back({K::kMatchRoot, static_cast<int>(i)});
      node_done[i] = true;
      queue.push_back(static_cast<int>(i));
    }
  }
  std::size_t head = 0;
  auto drain = [&] {
    while (head < queue.size()) {
      int u = queue[head++];
      for (std::size_t i = 0; i < L.edges.size(); ++i) {
        const PatternEdge& e = L.edges[i];
        if (edge_done[i] || (e.source != u && e.target != u)) continue;
        edge_done[i] = true;
        int ei = static_cast<int>(i);
        if (e.source == e.target) {
          plan.steps.push_back({K::kExtendLoop, u, ei, u, true});
          continue;
        }
        int other = e.source == u ? e.target : e.source;
        K kind = e.bidirectional ? K::kExtendBidirectional
                                 : (e.source == u ? K::kExtendOut : K::kExtendIn);
        plan.steps.push_back({kind, u, ei, other, node_done[other]});
        if (!node_done[other]) {
          node_done[other] = true;
          queue.push_back(other);
        }
      }
    }
  };
  drain();
  for (std::size_t i = 0; i < L.nodes.size(); ++i) {
    if (node_done[i]) continue;
    plan.steps.push_back({K::kMatchNode, static_cast<int>(i)});
    node_done[i] = true;
    queue.push_back(static_cast<int>(i));
    drain();
  }
  return plan;
}

std::string describe(const SearchPlan& plan) {
  std::string out;
  for (const PlanStep& s : plan.steps) {
    if (!out.empty()) out += ' ';
    switch (s.kind) {
      case PlanStep::Kind::kMatchRoot: out += "MatchRoot(" + std::to_string(s.from) + ")"; continue;
      case PlanStep::Kind::kMatchNode: out += "MatchNode(" + std::to_string(s.from) + ")"; continue;
      case PlanStep::Kind::kExtendOut: out += "ExtendOut("; break;
      case PlanStep::Kind::kExtendIn: out += "ExtendIn("; break;
      case PlanStep::Kind::kExtendLoop: out += "ExtendLoop("; break;
      case PlanStep::Kind::kExtendBidirectional: out += "ExtendBidirectional("; break;
    }
    out += std::to_string(s.from) + "," + std::to_string(s.edge) + "," + std::to_string(s.to) + ")";
  }
  return out;
}

Matcher::Matcher(const Rule& rule, bool optimize) : Matcher(rule, compile_plan(rule, optimize)) {}

Matcher::Matcher(const Rule& rule, SearchPlan plan) : rule_(&rule), plan_(std::move(plan)) {
  node_trail_mark_.resize(rule.lhs.nodes.size());
  edge_trail_mark_.resize(rule.lhs.edges.size());
}

bool Matcher::bind_node(int p, Node* h) {
  if (g_->matched(h)) return false;
  const Rule& r = *rule_;
  const PatternNode& pn = r.lhs.nodes[p];
  bool root = g_->is_root(h);
  if (pn.root && !root) return false;
  if (!pn.root && root && opts_.root_mode == RootMode::kReflect) return false;
  if (pn.label.mark != Mark::kAny && pn.label.mark != h->mark) return false;
  if (h->outdegree < static_cast<std::uint32_t>(r.lhs_out[p]) ||
      h->indegree < static_cast<std::uint32_t>(r.lhs_in[p]) ||
      h->degree() < static_cast<std::uint32_t>(r.lhs_degree[p])) {
    return false;
  }
  // Dangling condition by degree count.
  if (r.deletes_node(p) && h->degree() != static_cast<std::uint32_t>(r.lhs_degree[p])) return false;
  node_trail_mark_[p] = trail_.size();
  if (!label_match(pn.label, r, h->atoms(), match_.assignment, trail_)) return false;
  match_.nodes[p] = h;
  g_->set_matched(h, true);
  return true;
}

void Matcher::unbind_node(int p) {
  while (trail_.size() > node_trail_mark_[p]) {
    match_.assignment.unbind(trail_.back());
    trail_.pop_back();
  }
  g_->set_matched(match_.nodes[p], false);
  match_.nodes[p] = nullptr;
}

bool Matcher::bind_edge(int p, Edge* h) {
  if (h->flags & edge_flag::kMatched) return false;
  const PatternEdge& pe = rule_->lhs.edges[p];
  if (pe.label.mark != Mark::kAny && pe.label.mark != h->mark) return false;
  edge_trail_mark_[p] = trail_.size();
  if (!label_match(pe.label, *rule_, h->atoms(), match_.assignment, trail_)) return false;
  match_.edges[p] = h;
  h->flags |= edge_flag::kMatched;
  return true;
}

void Matcher::unbind_edge(int p) {
  while (trail_.size() > edge_trail_mark_[p]) {
    match_.assignment.unbind(trail_.back());
    trail_.pop_back();
  }
  match_.edges[p]->flags &= static_cast<std::uint8_t>(~edge_flag::kMatched);
  match_.edges[p] = nullptr;
}

bool Matcher::finish() {
  if (!rule_->condition) return true;
  return eval_cond(*rule_->condition, *rule_, match_.assignment, match_.view());
}

bool Matcher::extend(const PlanStep& s, std::size_t k, Edge* e, Node* other) {
  if (!bind_edge(s.edge, e)) return false;
  if (s.to_bound) {
    if (match_.nodes[s.to] == other && search(k + 1)) return true;
  } else if (bind_node(s.to, other)) {
    if (search(k + 1)) return true;
    unbind_node(s.to);
  }
  unbind_edge(s.edge);
  return false;
}

bool Matcher::search(std::size_t k) {
  if (k == plan_.steps.size()) return finish();
  const PlanStep& s = plan_.steps[k];
  using K = PlanStep::Kind;
  switch (s.kind) {
    case K::kMatchRoot:
      for (Node* h : g_->roots()) {
        ++steps_;
        if (bind_node(s.from, h)) {
          if (search(k + 1)) return true;
          unbind_node(s.from);
        }
      }
      return false;
    case K::kMatchNode:
      if (opts_.backend == IterationBackend::kChain) {
        for (Node* h : g_->node_chain()) {
          ++steps_;
          if (bind_node(s.from, h)) {
            if (search(k + 1)) return true;
            unbind_node(s.from);
          }
        }
      } else {
        const std::uint8_t* flags = g_->node_flag_column();
        std::size_t hw = g_->node_high_water();
        std::size_t i = 0;
        for (; i < hw; ++i) {
          if (!(flags[i] & node_flag::kInGraph)) continue;
          Node* h = g_->node_at(i);
          if (bind_node(s.from, h)) {
            if (search(k + 1)) {
              steps_ += i + 1;
              return true;
            }
            unbind_node(s.from);
          }
        }
        steps_ += hw;
      }
      return false;
    case K::kExtendOut: {
      Node* a = match_.nodes[s.from];
      for (Edge* e : a->out_edges) {
        ++steps_;
        if (extend(s, k, e, e->target)) return true;
      }
      return false;
    }
    case K::kExtendIn: {
      Node* a = match_.nodes[s.from];
      for (Edge* e : a->in_edges) {
        ++steps_;
        if (extend(s, k, e, e->source)) return true;
      }
      return false;
    }
    case K::kExtendLoop: {
      Node* a = match_.nodes[s.from];
      for (Edge* e : a->out_edges) {
        ++steps_;
        if (e->target == a && extend(s, k, e, a)) return true;
      }
      return false;
    }
    case K::kExtendBidirectional: {
      Node* a = match_.nodes[s.from];
      for (Edge* e : a->out_edges) {
        ++steps_;
        if (extend(s, k, e, e->target)) return true;
      }
      for (Edge* e : a->in_edges) {
        ++steps_;
        if (e->source != a && extend(s, k, e, e->source)) return true;
      }
      return false;
    }
  }
  return false;
}

void Matcher::clear_flags() {
  for (Node* n : match_.nodes) {
    if (n != nullptr) g_->set_matched(n, false);
  }
  for (Edge* e : match_.edges) {
    if (e != nullptr) e->flags &= static_cast<std::uint8_t>(~edge_flag::kMatched);
  }
}

bool Matcher::find(Graph& g, MatchOptions opts) {
  g_ = &g;
  opts_ = opts;
  steps_ = 0;
  match_.nodes.assign(rule_->lhs.nodes.size(), nullptr);
  match_.edges.assign(rule_->lhs.edges.size(), nullptr);
  match_.assignment.reset(rule_->variables.size());
  trail_.clear();
  bool found;
  try {
    found = search(0);
  } catch (...) {
    clear_flags();
    throw;
  }
  if (found) clear_flags();
  return found;
}

std::optional<Match> find_match(const SearchPlan& plan, const Rule& rule, Graph& g,
                                MatchOptions opts) {
  Matcher m(rule, plan);
  if (!m.find(g, opts)) return std::nullopt;
  return m.match();
}

}  // namespace gp2
