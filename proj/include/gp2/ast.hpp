// Rules, expressions, conditions and the command tree.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gp2/label.hpp"

namespace gp2 {

enum class VarType : std::uint8_t { kInt, kChar, kString, kAtom, kList };

std::string_view var_type_name(VarType t);

struct Variable {
  std::string name;
  VarType type;
};

struct Expr {
  enum class Kind : std::uint8_t {
    kIntLit, kStrLit, kVar, kIndeg, kOutdeg, kLength,
    kNeg, kAdd, kSub, kMul, kDiv, kConcat,
  };
  Kind kind = Kind::kIntLit;
  std::int32_t value = 0;
  std::string text;
  // Variable index for kVar/kLength, LHS node index for kIndeg/kOutdeg.
  int index = -1;
  std::vector<Expr> args;
  int line = 0;
  int column = 0;
};

// A list expression: items joined by ':' plus a mark.
struct LabelExpr {
  std::vector<Expr> items;
  Mark mark = Mark::kNone;
};

enum class RelOp : std::uint8_t { kEq, kNe, kLt, kLe, kGt, kGe };

struct Cond {
  enum class Kind : std::uint8_t { kAnd, kOr, kNot, kEdge, kCompare, kTypeCheck };
  Kind kind = Kind::kCompare;
  std::vector<Cond> args;
  RelOp op = RelOp::kEq;
  std::vector<Expr> left;
  std::vector<Expr> right;
  int source = -1;
  int target = -1;
  std::optional<LabelExpr> label;
  bool label_mark_given = false;
  VarType type = VarType::kInt;
  int var = -1;
};

struct PatternNode {
  std::string id;
  LabelExpr label;
  bool root = false;
};

struct PatternEdge {
  std::string id;
  int source = -1;
  int target = -1;
  LabelExpr label;
  bool bidirectional = false;
};

struct PatternGraph {
  std::vector<PatternNode> nodes;
  std::vector<PatternEdge> edges;
};

struct Rule {
  std::string name;
  std::vector<Variable> variables;
  PatternGraph lhs;
  PatternGraph rhs;
  std::optional<Cond> condition;
  // Interface correspondence; -1 where the item has no counterpart.
  std::vector<int> lhs_node_to_rhs;
  std::vector<int> rhs_node_to_lhs;
  std::vector<int> lhs_edge_to_rhs;
  std::vector<int> rhs_edge_to_lhs;
  // Per LHS node: incident pattern edge counts by kind.
  std::vector<int> lhs_out;
  std::vector<int> lhs_in;
  std::vector<int> lhs_degree;
  int line = 0;

  int variable_index(std::string_view name) const;
  bool deletes_node(int i) const { return lhs_node_to_rhs[i] < 0; }
};

struct Command {
  enum class Kind : std::uint8_t { kRuleSet, kCall, kSeq, kIf, kTry, kLoop, kBreak, kSkip, kFail };
  Kind kind = Kind::kSkip;
  std::vector<int> rules;
  std::string name;
  // If/Try: condition, then, else. Loop: body. Seq: items.
  std::vector<Command> body;
  bool may_fail = true;
  int line = 0;
  int column = 0;
};

struct Procedure {
  std::string name;
  Command body;
};

struct Program {
  std::vector<Rule> rules;
  std::map<std::string, int, std::less<>> rule_index;
  std::vector<Procedure> procedures;
  Command main;
};

// Builders used by the parser and tests.
Command make_rule_set(std::vector<int> rules);
Command make_seq(std::vector<Command> items);
Command make_loop(Command body);

std::string describe(const Command& c, const Program& p);

}  // namespace gp2
