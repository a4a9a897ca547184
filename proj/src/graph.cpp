#include "gp2/graph.hpp"

namespace gp2 {

Graph::Graph(GraphOptions opts)
    : labels_(!opts.minimal_gc), minimal_gc_(opts.minimal_gc) {}

Graph::~Graph() {
  // Edges hold no owned memory; nodes own their edge-entry stores.
  std::size_t hw = nodes_.high_water();
  for (std::size_t i = 0; i < hw; ++i) {
    if (node_flags_[i] & node_flag::kAllocated) nodes_.at(i)->~Node();
  }
}

void Graph::set_flag(const Node* n, std::uint8_t bit, bool on) {
  if (on) {
    node_flags_[n->index] |= bit;
  } else {
    node_flags_[n->index] &= static_cast<std::uint8_t>(~bit);
  }
}

void Graph::link_node(Node* n) {
  n->chain_entry = node_chain_.push(n, node_entries_);
  if (is_root(n)) n->root_entry = roots_.push(n, node_entries_);
  set_flag(n, node_flag::kInGraph, true);
  ++node_count_;
}

Node* Graph::add_node(AtomSpan label, Mark mark, bool root) {
  if (!is_node_mark(mark)) throw ContractViolation("not a host node mark");
  auto [n, index] = nodes_.emplace();
  n->index = static_cast<std::uint32_t>(index);
  n->mark = mark;
  n->label = labels_.intern(label);
  if (index >= node_flags_.size()) node_flags_.resize(index + 1, 0);
  node_flags_[index] = node_flag::kAllocated | (root ? node_flag::kRoot : 0);
  link_node(n);
  return n;
}

void Graph::delete_node(Node* n) {
  if (!in_graph(n)) throw ContractViolation("node is not in the graph");
  if (n->indegree != 0 || n->outdegree != 0) {
    throw ContractViolation("deleting a node with incident edges");
  }
  node_chain_.unlink(n->chain_entry, node_entries_);
  n->chain_entry = nullptr;
  if (n->root_entry != nullptr) {
    roots_.unlink(n->root_entry, node_entries_);
    n->root_entry = nullptr;
  }
  set_flag(n, node_flag::kInGraph, false);
  --node_count_;
  if (!pinned(n)) reclaim(n);
}

void Graph::link_edge(Edge* e) {
  e->out_entry = e->source->out_edges.push(e, edge_entries_);
  e->in_entry = e->target->in_edges.push(e, edge_entries_);
  ++e->source->outdegree;
  ++e->target->indegree;
  e->flags |= edge_flag::kInSrcChain | edge_flag::kInTgtChain;
  ++edge_count_;
}

Edge* Graph::add_edge(Node* src, Node* tgt, AtomSpan label, Mark mark) {
  if (!is_edge_mark(mark)) throw ContractViolation("not a host edge mark");
  if (!in_graph(src) || !in_graph(tgt)) throw ContractViolation("edge endpoint not in graph");
  Edge* e = edges_.create();
  e->label = labels_.intern(label);
  e->source = src;
  e->target = tgt;
  e->mark = mark;
  link_edge(e);
  return e;
}

void Graph::delete_edge(Edge* e) {
  if (!e->live()) throw ContractViolation("edge is not in the graph");
  e->source->out_edges.unlink(e->out_entry, edge_entries_);
  e->target->in_edges.unlink(e->in_entry, edge_entries_);
  e->out_entry = e->in_entry = nullptr;
  --e->source->outdegree;
  --e->target->indegree;
  e->flags &= static_cast<std::uint8_t>(~(edge_flag::kInSrcChain | edge_flag::kInTgtChain));
  --edge_count_;
  if (!pinned(e)) reclaim(e);
}

void Graph::relabel_node(Node* n, AtomSpan label) {
  const LabelRecord* r = labels_.intern(label);
  labels_.release(n->label);
  n->label = r;
}

void Graph::relabel_node(Node* n, const LabelRecord* label) {
  labels_.retain(label);
  labels_.release(n->label);
  n->label = label;
}

void Graph::remark_node(Node* n, Mark mark) {
  if (!is_node_mark(mark)) throw ContractViolation("not a host node mark");
  n->mark = mark;
}

void Graph::set_root(Node* n, bool root) {
  if (root == is_root(n)) return;
  set_flag(n, node_flag::kRoot, root);
  if (!in_graph(n)) return;
  if (root) {
    n->root_entry = roots_.push(n, node_entries_);
  } else {
    roots_.unlink(n->root_entry, node_entries_);
    n->root_entry = nullptr;
  }
}

void Graph::relabel_edge(Edge* e, AtomSpan label) {
  const LabelRecord* r = labels_.intern(label);
  labels_.release(e->label);
  e->label = r;
}

void Graph::relabel_edge(Edge* e, const LabelRecord* label) {
  labels_.retain(label);
  labels_.release(e->label);
  e->label = label;
}

void Graph::remark_edge(Edge* e, Mark mark) {
  if (!is_edge_mark(mark)) throw ContractViolation("not a host edge mark");
  e->mark = mark;
}

void Graph::pin(Node* n) {
  if (minimal_gc_) return;
  ++n->pins;
  set_flag(n, node_flag::kInChangeStack, true);
}

void Graph::pin(Edge* e) {
  if (minimal_gc_) return;
  ++e->pins;
  e->flags |= edge_flag::kInChangeStack;
}

bool Graph::clear_pin(Node* n) {
  if (!pinned(n)) return false;
  if (--n->pins != 0) return false;
  set_flag(n, node_flag::kInChangeStack, false);
  return !in_graph(n);
}

bool Graph::clear_pin(Edge* e) {
  if (!pinned(e)) return false;
  if (--e->pins != 0) return false;
  e->flags &= static_cast<std::uint8_t>(~edge_flag::kInChangeStack);
  return !e->live();
}

void Graph::unpin(Node* n) {
  if (clear_pin(n)) reclaim(n);
}

void Graph::unpin(Edge* e) {
  if (clear_pin(e)) reclaim(e);
}

void Graph::reclaim(Node* n) {
  if (minimal_gc_) return;
  labels_.release(n->label);
  node_flags_[n->index] = 0;
  nodes_.destroy(n);
}

void Graph::reclaim(Edge* e) {
  if (minimal_gc_) return;
  labels_.release(e->label);
  edges_.destroy(e);
}

void Graph::restore_node(Node* n) {
  if (!(flags(n) & node_flag::kAllocated) || in_graph(n)) {
    throw ContractViolation("restoring a node that is live or reclaimed");
  }
  link_node(n);
}

void Graph::restore_edge(Edge* e) {
  if (e->live()) throw ContractViolation("restoring a live edge");
  link_edge(e);
}

std::vector<Node*> Graph::nodes(IterationBackend backend) const {
  std::vector<Node*> out;
  out.reserve(node_count_);
  if (backend == IterationBackend::kChain) {
    for (Node* n : node_chain_) out.push_back(n);
    scan_steps_ += out.size();
  } else {
    std::size_t hw = nodes_.high_water();
    for (std::size_t i = 0; i < hw; ++i) {
      if (node_flags_[i] & node_flag::kInGraph) out.push_back(nodes_.at(i));
    }
    scan_steps_ += hw;
  }
  return out;
}

std::vector<Edge*> Graph::edges() const {
  std::vector<Edge*> out;
  out.reserve(edge_count_);
  for (Node* n : node_chain_) {
    for (Edge* e : n->out_edges) out.push_back(e);
  }
  return out;
}

Node* Graph::first_node(IterationBackend backend) const {
  if (backend == IterationBackend::kChain) {
    ++scan_steps_;
    return node_chain_.empty() ? nullptr : node_chain_.head()->item;
  }
  std::size_t hw = nodes_.high_water();
  for (std::size_t i = 0; i < hw; ++i) {
    if (node_flags_[i] & node_flag::kInGraph) {
      scan_steps_ += i + 1;
      return nodes_.at(i);
    }
  }
  scan_steps_ += hw;
  return nullptr;
}

}  // namespace gp2
