// Host graphs: nodes and edges in slot stores, a live-node chain, per-node
// in/out edge chains and a root list.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "gp2/label.hpp"
#include "gp2/storage.hpp"

namespace gp2 {

struct Edge;

enum class IterationBackend : std::uint8_t { kChain, kIndexScan };

namespace node_flag {
inline constexpr std::uint8_t kRoot = 1;
inline constexpr std::uint8_t kInGraph = 2;
inline constexpr std::uint8_t kInChangeStack = 4;
inline constexpr std::uint8_t kMatched = 8;
// Slot holds a constructed node (in graph or kept alive by the journal).
inline constexpr std::uint8_t kAllocated = 16;
}  // namespace node_flag

namespace edge_flag {
inline constexpr std::uint8_t kInSrcChain = 1;
inline constexpr std::uint8_t kInTgtChain = 2;
inline constexpr std::uint8_t kInChangeStack = 4;
inline constexpr std::uint8_t kMatched = 8;
}  // namespace edge_flag

struct Node {
  std::uint32_t index = 0;
  std::uint32_t indegree = 0;
  std::uint32_t outdegree = 0;
  // Journal entries referring to this node.
  std::uint32_t pins = 0;
  Mark mark = Mark::kNone;
  const LabelRecord* label = nullptr;
  Chain<Edge> out_edges;
  Chain<Edge> in_edges;
  ChainEntry<Node>* chain_entry = nullptr;
  ChainEntry<Node>* root_entry = nullptr;

  AtomSpan atoms() const { return atoms_of(label); }
  std::uint32_t degree() const { return indegree + outdegree; }
};

struct Edge {
  const LabelRecord* label = nullptr;
  Node* source = nullptr;
  Node* target = nullptr;
  ChainEntry<Edge>* out_entry = nullptr;
  ChainEntry<Edge>* in_entry = nullptr;
  Mark mark = Mark::kNone;
  std::uint8_t flags = 0;
  std::uint32_t pins = 0;

  AtomSpan atoms() const { return atoms_of(label); }
  bool live() const { return (flags & edge_flag::kInSrcChain) != 0; }
};

struct GraphOptions {
  // Never reclaim slots or label records.
  bool minimal_gc = false;
};

class Graph {
 public:
  explicit Graph(GraphOptions opts = {});
  ~Graph();
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Node* add_node(AtomSpan label, Mark mark = Mark::kNone, bool root = false);
  void delete_node(Node* n);
  Edge* add_edge(Node* src, Node* tgt, AtomSpan label, Mark mark = Mark::kNone);
  void delete_edge(Edge* e);

  void relabel_node(Node* n, AtomSpan label);
  void relabel_node(Node* n, const LabelRecord* label);
  void remark_node(Node* n, Mark mark);
  void set_root(Node* n, bool root);
  void relabel_edge(Edge* e, AtomSpan label);
  void relabel_edge(Edge* e, const LabelRecord* label);
  void remark_edge(Edge* e, Mark mark);

  // Journal support. A pinned item is not reclaimed when deleted. Pins are
  // counted, one per journal entry.
  void pin(Node* n);
  void pin(Edge* e);
  bool pinned(const Node* n) const { return flags(n) & node_flag::kInChangeStack; }
  bool pinned(const Edge* e) const { return e->flags & edge_flag::kInChangeStack; }
  // Drops one pin; reclaims the item if that was the last and it is dead.
  void unpin(Node* n);
  void unpin(Edge* e);
  // Drops one pin only; true if it was the last and the item needs reclaim().
  bool clear_pin(Node* n);
  bool clear_pin(Edge* e);
  void reclaim(Node* n);
  void reclaim(Edge* e);
  void restore_node(Node* n);
  void restore_edge(Edge* e);

  std::uint8_t flags(const Node* n) const { return node_flags_[n->index]; }
  bool is_root(const Node* n) const { return flags(n) & node_flag::kRoot; }
  bool in_graph(const Node* n) const { return flags(n) & node_flag::kInGraph; }
  bool matched(const Node* n) const { return flags(n) & node_flag::kMatched; }
  void set_matched(const Node* n, bool on) {
    set_flag(n, node_flag::kMatched, on);
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t root_count() const noexcept { return roots_.size(); }

  const Chain<Node>& node_chain() const noexcept { return node_chain_; }
  const Chain<Node>& roots() const noexcept { return roots_; }

  // Index-scan backend access.
  std::size_t node_high_water() const noexcept { return nodes_.high_water(); }
  const std::uint8_t* node_flag_column() const noexcept { return node_flags_.data(); }
  Node* node_at(std::size_t index) const noexcept { return nodes_.at(index); }

  // Snapshot of live nodes in backend order; adds to scan_steps().
  std::vector<Node*> nodes(IterationBackend backend = IterationBackend::kChain) const;
  std::vector<Edge*> edges() const;
  Node* first_node(IterationBackend backend) const;

  std::uint64_t scan_steps() const noexcept { return scan_steps_; }
  void count_steps(std::uint64_t n) const noexcept { scan_steps_ += n; }
  void reset_scan_steps() noexcept { scan_steps_ = 0; }

  LabelPool& labels() noexcept { return labels_; }
  const LabelPool& labels() const noexcept { return labels_; }
  bool minimal_gc() const noexcept { return minimal_gc_; }

  const BigArray<Node>& node_store() const noexcept { return nodes_; }
  const BigArray<Edge>& edge_store() const noexcept { return edges_; }
  const BigArray<ChainEntry<Node>>& node_entry_store() const noexcept { return node_entries_; }

 private:
  void link_node(Node* n);
  void link_edge(Edge* e);
  void set_flag(const Node* n, std::uint8_t bit, bool on);

  LabelPool labels_;
  BigArray<Node> nodes_;
  BigArray<Edge> edges_;
  BigArray<ChainEntry<Node>> node_entries_;
  BigArray<ChainEntry<Edge>> edge_entries_;
  std::vector<std::uint8_t> node_flags_;
  Chain<Node> node_chain_;
  Chain<Node> roots_;
  std::size_t node_count_ = 0;
  std::size_t edge_count_ = 0;
  bool minimal_gc_;
  mutable std::uint64_t scan_steps_ = 0;
};

// External integer node IDs to nodes, as read from host graph text.
class IdMap {
 public:
  bool insert(std::uint64_t id, Node* n) { return map_.emplace(id, n).second; }
  bool contains(std::uint64_t id) const { return map_.count(id) != 0; }
  void set(std::uint64_t id, Node* n) { map_[id] = n; }
  Node* lookup(std::uint64_t id) const {
    auto it = map_.find(id);
    return it == map_.end() ? nullptr : it->second;
  }
  std::size_t size() const noexcept { return map_.size(); }
  // Rough bytes held, for the memory-proportionality check.
  std::size_t footprint() const noexcept {
    return map_.bucket_count() * sizeof(void*) +
           map_.size() * (sizeof(std::uint64_t) + sizeof(Node*) + 2 * sizeof(void*));
  }

 private:
  std::unordered_map<std::uint64_t, Node*> map_;
};

// Label-, mark-, root- and direction-preserving isomorphism by backtracking.
bool graphs_isomorphic(const Graph& a, const Graph& b, bool compare_labels = true);

}  // namespace gp2
