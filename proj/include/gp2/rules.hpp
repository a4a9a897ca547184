// Variable assignments, expression and condition evaluation, label
// unification, RHS instantiation and the fast-rule classifier.
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gp2/ast.hpp"
#include "gp2/graph.hpp"

namespace gp2 {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Values are views into host labels, which stay put while a match is live.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t vars) { reset(vars); }

  void reset(std::size_t vars) {
    values_.assign(vars, AtomSpan{});
    bound_.assign(vars, 0);
  }
  bool bound(int v) const { return bound_[v] != 0; }
  AtomSpan value(int v) const { return values_[v]; }
  void bind(int v, AtomSpan value) {
    values_[v] = value;
    bound_[v] = 1;
  }
  void unbind(int v) { bound_[v] = 0; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<AtomSpan> values_;
  std::vector<char> bound_;
};

// Host images of the LHS nodes, for indeg/outdeg and edge predicates.
struct MatchView {
  std::span<Node* const> nodes;
};

// Appends the value of a list expression to out.
void eval_list(std::span<const Expr> items, const Rule& rule, const Assignment& a,
               const MatchView& m, HostList& out);
HostList eval_label(const LabelExpr& label, const Rule& rule, const Assignment& a,
                    const MatchView& m);
std::int32_t eval_int(const Expr& e, const Rule& rule, const Assignment& a, const MatchView& m);
std::string eval_string(const Expr& e, const Rule& rule, const Assignment& a,
                        const MatchView& m);
bool eval_cond(const Cond& c, const Rule& rule, const Assignment& a, const MatchView& m);

// Static category of an expression.
enum class ExprType : std::uint8_t { kInt, kString, kAtom, kList };
ExprType expr_type(const Expr& e, const Rule& rule);

// Extends a with the bindings needed to make pattern equal host. Newly
// bound variables are appended to trail. Leaves a unchanged on failure.
bool label_match(const LabelExpr& pattern, const Rule& rule, AtomSpan host, Assignment& a,
                 std::vector<int>& trail);

struct InstantiatedRhs {
  std::vector<HostList> node_labels;
  std::vector<Mark> node_marks;
  std::vector<HostList> edge_labels;
  std::vector<Mark> edge_marks;
};

// Any-marks on interface items resolve to the matched host mark.
InstantiatedRhs instantiate_rhs(const Rule& rule, const Assignment& a, const MatchView& m,
                                std::span<Edge* const> edge_images);

struct FastRuleReport {
  bool fast = false;
  bool rooted = false;
  bool no_repeated_variables = false;
  bool simple_condition = false;
  std::vector<std::string> diagnostics;
};

FastRuleReport check_fast_rule(const Rule& rule);

// Clause (1) alone: every LHS node undirectedly reachable from a root.
bool all_nodes_reach_root(const PatternGraph& g);

}  // namespace gp2
