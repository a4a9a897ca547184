// Rule application, the change journal and command execution.
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gp2/ast.hpp"
#include "gp2/graph.hpp"
#include "gp2/match.hpp"

namespace gp2 {

struct ChangeEntry {
  enum class Kind : std::uint8_t {
    kNodeAdded, kNodeDeleted, kEdgeAdded, kEdgeDeleted,
    kNodeRelabeled, kNodeRemarked, kRootChanged, kEdgeRelabeled, kEdgeRemarked,
  };
  Kind kind;
  Node* node = nullptr;
  Edge* edge = nullptr;
  const LabelRecord* old_label = nullptr;
  Mark old_mark = Mark::kNone;
  bool old_root = false;
};

// Framed undo log. Items it references are pinned so their slots are not
// recycled while an entry could still restore them.
class ChangeStack {
 public:
  explicit ChangeStack(Graph& g) : g_(&g) {}
  ChangeStack(const ChangeStack&) = delete;
  ChangeStack& operator=(const ChangeStack&) = delete;
  ~ChangeStack();

  void open_frame() { frames_.push_back(entries_.size()); }
  // Keeps the frame's changes. The outermost commit releases all entries.
  void commit_frame();
  void undo_frame();
  bool recording() const noexcept { return !frames_.empty(); }
  std::size_t depth() const noexcept { return frames_.size(); }
  std::size_t size() const noexcept { return entries_.size(); }

  // Mutations; journaled when a frame is open.
  Node* add_node(AtomSpan label, Mark mark, bool root);
  void delete_node(Node* n);
  Edge* add_edge(Node* s, Node* t, AtomSpan label, Mark mark);
  void delete_edge(Edge* e);
  void relabel_node(Node* n, AtomSpan label);
  void remark_node(Node* n, Mark mark);
  void set_root(Node* n, bool root);
  void relabel_edge(Edge* e, AtomSpan label);
  void remark_edge(Edge* e, Mark mark);

  Graph& graph() noexcept { return *g_; }

 private:
  void push(ChangeEntry e);
  void undo(const ChangeEntry& e);
  void release_all();

  Graph* g_;
  std::vector<ChangeEntry> entries_;
  std::vector<std::size_t> frames_;
  std::vector<Node*> dead_nodes_;
  std::vector<Edge*> dead_edges_;
};

// Applies a valid match: deletions, interface updates, then creations.
void apply_rule(const Rule& rule, const Match& m, ChangeStack& journal);

struct ExecConfig {
  IterationBackend iteration_backend = IterationBackend::kChain;
  RootMode root_mode = RootMode::kPreserve;
  bool fast_shutdown = false;
  bool minimal_gc = false;
  bool optimize_plans = true;

  // Throws std::invalid_argument on an inconsistent combination.
  void validate() const;
};

// Runtime failure of a program, such as division by zero.
class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Expands procedure calls; throws SourceError on recursion.
Command inline_procedures(const Program& program);
// Computes Command::may_fail bottom-up.
void annotate(Command& c);

enum class ExecStatus : std::uint8_t { kSucceeded, kFailed, kBroke };

class Executor {
 public:
  Executor(const Program& program, Graph& g, ExecConfig cfg);

  // Throws ProgramError.
  ExecStatus exec(const Command& c);
  std::uint64_t rule_applications() const noexcept { return applications_; }
  ChangeStack& journal() noexcept { return stack_; }

 private:
  bool apply_rule_set(const Command& c);
  bool any_match(const Command& c);
  ExecStatus exec_loop(const Command& c);

  const Program& program_;
  Graph& g_;
  ExecConfig cfg_;
  MatchOptions opts_;
  std::vector<Matcher> matchers_;
  ChangeStack stack_;
  std::uint64_t applications_ = 0;
};

struct Outcome {
  enum class Kind : std::uint8_t { kSuccess, kFail, kProgramError, kValidationError };
  Kind kind = Kind::kFail;
  std::unique_ptr<Graph> graph;
  std::string output;
  std::string diagnostic;
};

std::string_view outcome_name(Outcome::Kind k);

// Runs an already parsed program on g, printing nothing.
ExecStatus run_on(const Program& program, const Command& main, Graph& g, const ExecConfig& cfg);

Outcome run_program(std::string_view program_text, std::string_view host_text,
                    const ExecConfig& cfg);

}  // namespace gp2
