// Search plans and the backtracking matcher, plus the exhaustive matcher and
// match auditor used to check it.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gp2/ast.hpp"
#include "gp2/graph.hpp"
#include "gp2/rules.hpp"

namespace gp2 {

enum class RootMode : std::uint8_t { kPreserve, kReflect };

struct MatchOptions {
  IterationBackend backend = IterationBackend::kChain;
  RootMode root_mode = RootMode::kPreserve;
};

struct PlanStep {
  enum class Kind : std::uint8_t {
    kMatchRoot, kMatchNode, kExtendOut, kExtendIn, kExtendLoop, kExtendBidirectional,
  };
  Kind kind;
  // Node produced (match steps) or already matched anchor (extend steps).
  int from = -1;
  int edge = -1;
  int to = -1;
  // Extend into an already matched node: only the edge is checked.
  bool to_bound = false;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct SearchPlan {
  std::vector<PlanStep> steps;
};

SearchPlan compile_plan(const Rule& rule, bool optimize = true);
std::string describe(const SearchPlan& plan);

struct Match {
  std::vector<Node*> nodes;
  std::vector<Edge*> edges;
  Assignment assignment;

  MatchView view() const { return MatchView{nodes}; }
};

// Holds the compiled plan and reusable search buffers for one rule.
class Matcher {
 public:
  Matcher(const Rule& rule, bool optimize = true);
  Matcher(const Rule& rule, SearchPlan plan);

  // True if a match exists; the match is then available via match().
  bool find(Graph& g, MatchOptions opts);
  const Match& match() const { return match_; }
  const SearchPlan& plan() const { return plan_; }
  const Rule& rule() const { return *rule_; }
  // Candidate items examined by the last find().
  std::uint64_t steps() const { return steps_; }

 private:
  bool search(std::size_t k);
  bool bind_node(int p, Node* h);
  void unbind_node(int p);
  bool bind_edge(int p, Edge* h);
  void unbind_edge(int p);
  bool finish();
  bool extend(const PlanStep& s, std::size_t k, Edge* e, Node* other);
  void clear_flags();

  const Rule* rule_;
  SearchPlan plan_;
  Match match_;
  std::vector<int> trail_;
  std::vector<std::size_t> node_trail_mark_;
  std::vector<std::size_t> edge_trail_mark_;
  Graph* g_ = nullptr;
  MatchOptions opts_;
  std::uint64_t steps_ = 0;
};

std::optional<Match> find_match(const SearchPlan& plan, const Rule& rule, Graph& g,
                                MatchOptions opts);

// Every valid match, by exhaustive enumeration. Small hosts only.
std::vector<Match> brute_force_match(const Rule& rule, const Graph& g, RootMode mode);

// Empty if m is a valid match of rule in g; otherwise the first problem.
std::optional<std::string> audit_match(const Rule& rule, const Graph& g, const Match& m,
                                       RootMode mode);

}  // namespace gp2
