#include "gp2/engine.hpp"

namespace gp2 {

using K = ChangeEntry::Kind;

ChangeStack::~ChangeStack() { release_all(); }

void ChangeStack::push(ChangeEntry e) {
  if (e.node != nullptr) g_->pin(e.node);
  if (e.edge != nullptr) g_->pin(e.edge);
  entries_.push_back(e);
}

Node* ChangeStack::add_node(AtomSpan label, Mark mark, bool root) {
  Node* n = g_->add_node(label, mark, root);
  if (recording()) push({K::kNodeAdded, n});
  return n;
}

void ChangeStack::delete_node(Node* n) {
  if (recording()) push({K::kNodeDeleted, n});
  g_->delete_node(n);
}

Edge* ChangeStack::add_edge(Node* s, Node* t, AtomSpan label, Mark mark) {
  Edge* e = g_->add_edge(s, t, label, mark);
  if (recording()) push({K::kEdgeAdded, nullptr, e});
  return e;
}

void ChangeStack::delete_edge(Edge* e) {
  if (recording()) push({K::kEdgeDeleted, nullptr, e});
  g_->delete_edge(e);
}

void ChangeStack::relabel_node(Node* n, AtomSpan label) {
  if (lists_equal(n->atoms(), label)) return;
  if (recording()) {
    g_->labels().retain(n->label);
    push({K::kNodeRelabeled, n, nullptr, n->label});
  }
  g_->relabel_node(n, label);
}

void ChangeStack::remark_node(Node* n, Mark mark) {
  if (n->mark == mark) return;
  if (recording()) push({K::kNodeRemarked, n, nullptr, nullptr, n->mark});
  g_->remark_node(n, mark);
}

void ChangeStack::set_root(Node* n, bool root) {
  if (g_->is_root(n) == root) return;
  if (recording()) push({K::kRootChanged, n, nullptr, nullptr, Mark::kNone, !root});
  g_->set_root(n, root);
}

void ChangeStack::relabel_edge(Edge* e, AtomSpan label) {
  if (lists_equal(e->atoms(), label)) return;
  if (recording()) {
    g_->labels().retain(e->label);
    push({K::kEdgeRelabeled, nullptr, e, e->label});
  }
  g_->relabel_edge(e, label);
}

void ChangeStack::remark_edge(Edge* e, Mark mark) {
  if (e->mark == mark) return;
  if (recording()) push({K::kEdgeRemarked, nullptr, e, nullptr, e->mark});
  g_->remark_edge(e, mark);
}

void ChangeStack::undo(const ChangeEntry& e) {
  switch (e.kind) {
    case K::kNodeAdded:
      g_->delete_node(e.node);
      g_->unpin(e.node);
      break;
    case K::kNodeDeleted:
      g_->restore_node(e.node);
      g_->unpin(e.node);
      break;
    case K::kEdgeAdded:
      g_->delete_edge(e.edge);
      g_->unpin(e.edge);
      break;
    case K::kEdgeDeleted:
      g_->restore_edge(e.edge);
      g_->unpin(e.edge);
      break;
    case K::kNodeRelabeled:
      g_->relabel_node(e.node, e.old_label);
      g_->labels().release(e.old_label);
      g_->unpin(e.node);
      break;
    case K::kNodeRemarked:
      g_->remark_node(e.node, e.old_mark);
      g_->unpin(e.node);
      break;
    case K::kRootChanged:
      g_->set_root(e.node, e.old_root);
      g_->unpin(e.node);
      break;
    case K::kEdgeRelabeled:
      g_->relabel_edge(e.edge, e.old_label);
      g_->labels().release(e.old_label);
      g_->unpin(e.edge);
      break;
    case K::kEdgeRemarked:
      g_->remark_edge(e.edge, e.old_mark);
      g_->unpin(e.edge);
      break;
  }
}

void ChangeStack::undo_frame() {
  if (frames_.empty()) throw ContractViolation("no open frame to undo");
  std::size_t base = frames_.back();
  frames_.pop_back();
  while (entries_.size() > base) {
    ChangeEntry e = entries_.back();
    entries_.pop_back();
    undo(e);
  }
}

void ChangeStack::commit_frame() {
  if (frames_.empty()) throw ContractViolation("no open frame to commit");
  frames_.pop_back();
  if (frames_.empty()) release_all();
}

// Two passes: drop one pin per entry first, then reclaim the dead, so an item
// referenced by several entries is reclaimed exactly once.
void ChangeStack::release_all() {
  for (const ChangeEntry& e : entries_) {
    if (e.node != nullptr && g_->clear_pin(e.node)) dead_nodes_.push_back(e.node);
    if (e.edge != nullptr && g_->clear_pin(e.edge)) dead_edges_.push_back(e.edge);
    if (e.kind == K::kNodeRelabeled || e.kind == K::kEdgeRelabeled) {
      g_->labels().release(e.old_label);
    }
  }
  for (Edge* e : dead_edges_) g_->reclaim(e);
  for (Node* n : dead_nodes_) g_->reclaim(n);
  entries_.clear();
  dead_nodes_.clear();
  dead_edges_.clear();
  frames_.clear();
}

}  // namespace gp2
