#include <algorithm>
#include <set>

#include "gp2/rules.hpp"
#include "parse_internal.hpp"

namespace gp2::detail {
namespace {

void collect_vars(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == Expr::Kind::kVar || e.kind == Expr::Kind::kLength) out.push_back(&e);
  for (const Expr& a : e.args) collect_vars(a, out);
}

void collect_vars(const Cond& c, std::vector<const Expr*>& out, std::vector<int>& typed) {
  for (const Expr& e : c.left) collect_vars(e, out);
  for (const Expr& e : c.right) collect_vars(e, out);
  if (c.label) {
    for (const Expr& e : c.label->items) collect_vars(e, out);
  }
  if (c.kind == Cond::Kind::kTypeCheck) typed.push_back(c.var);
  for (const Cond& a : c.args) collect_vars(a, out, typed);
}

void check_expr(const Expr& e, const Rule& r) {
  auto require = [&](const Expr& arg, ExprType want, const char* what) {
    ExprType got = expr_type(arg, r);
    if (got != want) semantic_error(arg.line, arg.column, std::string(what) + " in rule " + r.name);
  };
  switch (e.kind) {
    case Expr::Kind::kNeg:
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub:
    case Expr::Kind::kMul:
    case Expr::Kind::kDiv:
      for (const Expr& a : e.args) {
        require(a, ExprType::kInt, "arithmetic needs integer operands");
        check_expr(a, r);
      }
      break;
    case Expr::Kind::kConcat:
      for (const Expr& a : e.args) {
        require(a, ExprType::kString, "'.' needs string operands");
        check_expr(a, r);
      }
      break;
    case Expr::Kind::kLength: {
      VarType t = r.variables[e.index].type;
      if (t == VarType::kInt) semantic_error(e.line, e.column, "length of an integer variable");
      break;
    }
    default:
      break;
  }
}

void check_label(const LabelExpr& l, const Rule& r, bool lhs, bool is_edge, int line) {
  if (!is_edge && l.mark == Mark::kDashed) semantic_error(line, 0, "dashed mark on a node in rule " + r.name);
  if (is_edge && l.mark == Mark::kGrey) semantic_error(line, 0, "grey mark on an edge in rule " + r.name);
  int lists = 0;
  for (const Expr& e : l.items) {
    if (lhs && e.kind != Expr::Kind::kIntLit && e.kind != Expr::Kind::kStrLit &&
        e.kind != Expr::Kind::kVar) {
      semantic_error(e.line, e.column, "left-hand labels hold only constants and variables");
    }
    if (e.kind == Expr::Kind::kVar && r.variables[e.index].type == VarType::kList) ++lists;
    check_expr(e, r);
  }
  if (lhs && lists > 1) semantic_error(line, 0, "more than one list variable in a label of rule " + r.name);
}

void check_cond(const Cond& c, const Rule& r) {
  switch (c.kind) {
    case Cond::Kind::kCompare:
      if (c.op != RelOp::kEq && c.op != RelOp::kNe) {
        for (const auto* side : {&c.left, &c.right}) {
          if (side->size() != 1 || expr_type((*side)[0], r) != ExprType::kInt) {
            semantic_error(r.line, 0, "ordering comparison needs integers in rule " + r.name);
          }
        }
      }
      for (const Expr& e : c.left) check_expr(e, r);
      for (const Expr& e : c.right) check_expr(e, r);
      break;
    case Cond::Kind::kEdge:
      if (c.label) {
        if (c.label->mark == Mark::kGrey) semantic_error(r.line, 0, "grey mark on an edge");
        for (const Expr& e : c.label->items) check_expr(e, r);
      }
      break;
    default:
      for (const Cond& a : c.args) check_cond(a, r);
  }
}

}  // namespace

void check_rule(Rule& r) {
  const auto& L = r.lhs;
  const auto& R = r.rhs;
  r.lhs_node_to_rhs.assign(L.nodes.size(), -1);
  r.rhs_node_to_lhs.assign(R.nodes.size(), -1);
  r.lhs_edge_to_rhs.assign(L.edges.size(), -1);
  r.rhs_edge_to_lhs.assign(R.edges.size(), -1);
  for (std::size_t i = 0; i < L.nodes.size(); ++i) {
    for (std::size_t j = 0; j < R.nodes.size(); ++j) {
      if (L.nodes[i].id == R.nodes[j].id) {
        r.lhs_node_to_rhs[i] = static_cast<int>(j);
        r.rhs_node_to_lhs[j] = static_cast<int>(i);
      }
    }
  }
  for (std::size_t i = 0; i < L.edges.size(); ++i) {
    for (std::size_t j = 0; j < R.edges.size(); ++j) {
      if (L.edges[i].id != R.edges[j].id) continue;
      const PatternEdge& le = L.edges[i];
      const PatternEdge& re = R.edges[j];
      if (r.lhs_node_to_rhs[le.source] != re.source || r.lhs_node_to_rhs[le.target] != re.target) {
        semantic_error(r.line, 0, "edge " + le.id + " changes its endpoints in rule " + r.name);
      }
      if (le.bidirectional != re.bidirectional) {
        semantic_error(r.line, 0, "edge " + le.id + " changes direction kind in rule " + r.name);
      }
      r.lhs_edge_to_rhs[i] = static_cast<int>(j);
      r.rhs_edge_to_lhs[j] = static_cast<int>(i);
    }
  }
  for (std::size_t j = 0; j < R.edges.size(); ++j) {
    if (R.edges[j].bidirectional && r.rhs_edge_to_lhs[j] < 0) {
      semantic_error(r.line, 0, "created edge " + R.edges[j].id + " cannot be bidirectional");
    }
    if (R.edges[j].label.mark == Mark::kAny && r.rhs_edge_to_lhs[j] < 0) {
      semantic_error(r.line, 0, "created edge " + R.edges[j].id + " cannot have mark any");
    }
  }
  for (std::size_t j = 0; j < R.nodes.size(); ++j) {
    if (R.nodes[j].label.mark == Mark::kAny && r.rhs_node_to_lhs[j] < 0) {
      semantic_error(r.line, 0, "created node " + R.nodes[j].id + " cannot have mark any");
    }
  }

  r.lhs_out.assign(L.nodes.size(), 0);
  r.lhs_in.assign(L.nodes.size(), 0);
  r.lhs_degree.assign(L.nodes.size(), 0);
  for (const PatternEdge& e : L.edges) {
    if (!e.bidirectional) {
      ++r.lhs_out[e.source];
      ++r.lhs_in[e.target];
    }
    ++r.lhs_degree[e.source];
    ++r.lhs_degree[e.target];
  }

  for (const auto& n : L.nodes) check_label(n.label, r, true, false, r.line);
  for (const auto& e : L.edges) check_label(e.label, r, true, true, r.line);
  for (const auto& n : R.nodes) check_label(n.label, r, false, false, r.line);
  for (const auto& e : R.edges) check_label(e.label, r, false, true, r.line);
  if (r.condition) check_cond(*r.condition, r);

  // Every variable used on the right or in the condition must be bound on the left.
  std::set<int> bound;
  for (const auto& n : L.nodes) {
    for (const Expr& e : n.label.items) {
      if (e.kind == Expr::Kind::kVar) bound.insert(e.index);
    }
  }
  for (const auto& e : L.edges) {
    for (const Expr& x : e.label.items) {
      if (x.kind == Expr::Kind::kVar) bound.insert(x.index);
    }
  }
  std::vector<const Expr*> used;
  std::vector<int> typed;
  for (const auto& n : R.nodes) {
    for (const Expr& e : n.label.items) collect_vars(e, used);
  }
  for (const auto& e : R.edges) {
    for (const Expr& x : e.label.items) collect_vars(x, used);
  }
  if (r.condition) collect_vars(*r.condition, used, typed);
  for (const Expr* e : used) {
    if (bound.count(e->index) == 0) {
      semantic_error(e->line, e->column,
                     "variable " + r.variables[e->index].name + " is not bound by the left-hand side");
    }
  }
  for (int v : typed) {
    if (bound.count(v) == 0) {
      semantic_error(r.line, 0, "variable " + r.variables[v].name + " is not bound by the left-hand side");
    }
  }
}

namespace {

struct ProgramChecker {
  Program& p;
  std::map<std::string, int, std::less<>> procs;
  std::vector<int> state;  // 0 unvisited, 1 in progress, 2 done

  void resolve(Command& c) {
    if (c.kind == Command::Kind::kRuleSet && c.rules.empty()) {
      for (const Command& call : c.body) {
        auto it = p.rule_index.find(call.name);
        if (it == p.rule_index.end()) {
          semantic_error(call.line, call.column, "unknown rule " + call.name);
        }
        c.rules.push_back(it->second);
      }
      c.body.clear();
      return;
    }
    if (c.kind == Command::Kind::kCall) {
      auto it = p.rule_index.find(c.name);
      if (it != p.rule_index.end()) {
        int idx = it->second;
        c.kind = Command::Kind::kRuleSet;
        c.rules = {idx};
        c.name.clear();
        return;
      }
      if (procs.count(c.name) == 0) {
        semantic_error(c.line, c.column, "unknown rule or procedure " + c.name);
      }
      return;
    }
    for (Command& b : c.body) resolve(b);
  }

  void no_recursion(const Command& c) {
    if (c.kind == Command::Kind::kCall) visit(procs.at(c.name), c);
    for (const Command& b : c.body) no_recursion(b);
  }

  void visit(int proc, const Command& site) {
    if (state[proc] == 2) return;
    if (state[proc] == 1) {
      semantic_error(site.line, site.column, "procedure " + p.procedures[proc].name + " is recursive");
    }
    state[proc] = 1;
    no_recursion(p.procedures[proc].body);
    state[proc] = 2;
  }

  // loop: a loop encloses c within the current guard scope.
  void breaks(const Command& c, bool loop) {
    switch (c.kind) {
      case Command::Kind::kBreak:
        if (!loop) semantic_error(c.line, c.column, "break outside a loop");
        return;
      case Command::Kind::kLoop:
        breaks(c.body[0], true);
        return;
      case Command::Kind::kIf:
      case Command::Kind::kTry:
        breaks(c.body[0], false);
        breaks(c.body[1], loop);
        breaks(c.body[2], loop);
        return;
      case Command::Kind::kCall:
        breaks(p.procedures[procs.at(c.name)].body, loop);
        return;
      default:
        for (const Command& b : c.body) breaks(b, loop);
    }
  }

  void run() {
    for (std::size_t i = 0; i < p.procedures.size(); ++i) {
      const std::string& name = p.procedures[i].name;
      if (p.rule_index.count(name) != 0 || procs.count(name) != 0) {
        const Command& b = p.procedures[i].body;
        semantic_error(b.line, b.column, "name " + name + " declared twice");
      }
      procs.emplace(name, static_cast<int>(i));
    }
    if (p.rule_index.count("Main") != 0) semantic_error(0, 0, "Main cannot be a rule");
    for (Procedure& proc : p.procedures) resolve(proc.body);
    resolve(p.main);
    state.assign(p.procedures.size(), 0);
    no_recursion(p.main);
    for (std::size_t i = 0; i < p.procedures.size(); ++i) visit(static_cast<int>(i), p.procedures[i].body);
    breaks(p.main, false);
  }
};

}  // namespace

void check_program(Program& program) {
  ProgramChecker c{program, {}, {}};
  c.run();
}

}  // namespace gp2::detail
