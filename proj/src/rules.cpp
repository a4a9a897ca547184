#include "gp2/rules.hpp"

#include <algorithm>
#include <limits>

namespace gp2 {

std::string_view var_type_name(VarType t) {
  switch (t) {
    case VarType::kInt: return "int";
    case VarType::kChar: return "char";
    case VarType::kString: return "string";
    case VarType::kAtom: return "atom";
    case VarType::kList: return "list";
  }
  return "list";
}

int Rule::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

Command make_rule_set(std::vector<int> rules) {
  Command c;
  c.kind = Command::Kind::kRuleSet;
  c.rules = std::move(rules);
  return c;
}

Command make_seq(std::vector<Command> items) {
  Command c;
  c.kind = Command::Kind::kSeq;
  c.body = std::move(items);
  return c;
}

Command make_loop(Command body) {
  Command c;
  c.kind = Command::Kind::kLoop;
  c.body.push_back(std::move(body));
  return c;
}

std::string describe(const Command& c, const Program& p) {
  auto join = [&](const std::vector<Command>& items) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) s += ", ";
      s += describe(items[i], p);
    }
    return s;
  };
  switch (c.kind) {
    case Command::Kind::kRuleSet: {
      std::string s = "RuleSet{";
      for (std::size_t i = 0; i < c.rules.size(); ++i) {
        if (i > 0) s += ",";
        s += p.rules[c.rules[i]].name;
      }
      return s + "}";
    }
    case Command::Kind::kCall: return "Call(" + c.name + ")";
    case Command::Kind::kSeq: return "Seq(" + join(c.body) + ")";
    case Command::Kind::kIf: return "If(" + join(c.body) + ")";
    case Command::Kind::kTry: return "Try(" + join(c.body) + ")";
    case Command::Kind::kLoop: return "Loop(" + join(c.body) + ")";
    case Command::Kind::kBreak: return "Break";
    case Command::Kind::kSkip: return "Skip";
    case Command::Kind::kFail: return "Fail";
  }
  return "?";
}

ExprType expr_type(const Expr& e, const Rule& rule) {
  switch (e.kind) {
    case Expr::Kind::kStrLit:
    case Expr::Kind::kConcat:
      return ExprType::kString;
    case Expr::Kind::kVar:
      switch (rule.variables[e.index].type) {
        case VarType::kInt: return ExprType::kInt;
        case VarType::kChar:
        case VarType::kString: return ExprType::kString;
        case VarType::kAtom: return ExprType::kAtom;
        case VarType::kList: return ExprType::kList;
      }
      return ExprType::kList;
    default:
      return ExprType::kInt;
  }
}

namespace {

std::int32_t wrap(std::int64_t v) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(static_cast<std::uint64_t>(v)));
}

const Atom& single_atom(const Expr& e, const Rule& rule, const Assignment& a) {
  AtomSpan v = a.value(e.index);
  if (v.size() != 1) {
    throw EvalError("variable " + rule.variables[e.index].name + " does not hold one atom");
  }
  return v[0];
}

}  // namespace

std::int32_t eval_int(const Expr& e, const Rule& rule, const Assignment& a, const MatchView& m) {
  switch (e.kind) {
    case Expr::Kind::kIntLit: return e.value;
    case Expr::Kind::kVar: {
      const Atom& x = single_atom(e, rule, a);
      if (!is_int(x)) throw EvalError("variable " + rule.variables[e.index].name + " is not an integer");
      return std::get<std::int32_t>(x);
    }
    case Expr::Kind::kIndeg: return static_cast<std::int32_t>(m.nodes[e.index]->indegree);
    case Expr::Kind::kOutdeg: return static_cast<std::int32_t>(m.nodes[e.index]->outdegree);
    case Expr::Kind::kLength: {
      AtomSpan v = a.value(e.index);
      if (rule.variables[e.index].type == VarType::kList) return static_cast<std::int32_t>(v.size());
      if (v.size() == 1 && is_string(v[0])) {
        return static_cast<std::int32_t>(std::get<std::string>(v[0]).size());
      }
      throw EvalError("length of a non-string value");
    }
    case Expr::Kind::kNeg: return wrap(-static_cast<std::int64_t>(eval_int(e.args[0], rule, a, m)));
    case Expr::Kind::kAdd:
      return wrap(static_cast<std::int64_t>(eval_int(e.args[0], rule, a, m)) +
                  eval_int(e.args[1], rule, a, m));
    case Expr::Kind::kSub:
      return wrap(static_cast<std::int64_t>(eval_int(e.args[0], rule, a, m)) -
                  eval_int(e.args[1], rule, a, m));
    case Expr::Kind::kMul:
      return wrap(static_cast<std::int64_t>(eval_int(e.args[0], rule, a, m)) *
                  eval_int(e.args[1], rule, a, m));
    case Expr::Kind::kDiv: {
      std::int64_t x = eval_int(e.args[0], rule, a, m);
      std::int64_t y = eval_int(e.args[1], rule, a, m);
      if (y == 0) throw EvalError("division by zero in rule " + rule.name);
      return wrap(x / y);
    }
    default:
      throw EvalError("expression is not an integer");
  }
}

std::string eval_string(const Expr& e, const Rule& rule, const Assignment& a, const MatchView& m) {
  switch (e.kind) {
    case Expr::Kind::kStrLit: return e.text;
    case Expr::Kind::kVar: {
      const Atom& x = single_atom(e, rule, a);
      if (!is_string(x)) throw EvalError("variable " + rule.variables[e.index].name + " is not a string");
      return std::get<std::string>(x);
    }
    case Expr::Kind::kConcat:
      return eval_string(e.args[0], rule, a, m) + eval_string(e.args[1], rule, a, m);
    default:
      throw EvalError("expression is not a string");
  }
}

void eval_list(std::span<const Expr> items, const Rule& rule, const Assignment& a,
               const MatchView& m, HostList& out) {
  for (const Expr& e : items) {
    switch (expr_type(e, rule)) {
      case ExprType::kList: {
        AtomSpan v = a.value(e.index);
        out.insert(out.end(), v.begin(), v.end());
        break;
      }
      case ExprType::kAtom:
        out.push_back(single_atom(e, rule, a));
        break;
      case ExprType::kInt:
        out.emplace_back(eval_int(e, rule, a, m));
        break;
      case ExprType::kString:
        out.emplace_back(eval_string(e, rule, a, m));
        break;
    }
  }
}

HostList eval_label(const LabelExpr& label, const Rule& rule, const Assignment& a,
                    const MatchView& m) {
  HostList out;
  eval_list(label.items, rule, a, m, out);
  return out;
}

bool eval_cond(const Cond& c, const Rule& rule, const Assignment& a, const MatchView& m) {
  switch (c.kind) {
    case Cond::Kind::kAnd:
      return eval_cond(c.args[0], rule, a, m) && eval_cond(c.args[1], rule, a, m);
    case Cond::Kind::kOr:
      return eval_cond(c.args[0], rule, a, m) || eval_cond(c.args[1], rule, a, m);
    case Cond::Kind::kNot:
      return !eval_cond(c.args[0], rule, a, m);
    case Cond::Kind::kEdge: {
      const Node* s = m.nodes[c.source];
      const Node* t = m.nodes[c.target];
      HostList want;
      if (c.label) eval_list(c.label->items, rule, a, m, want);
      for (const Edge* e : s->out_edges) {
        if (e->target != t) continue;
        if (c.label) {
          if (!lists_equal(e->atoms(), want)) continue;
          if (c.label_mark_given && c.label->mark != Mark::kAny && e->mark != c.label->mark) continue;
        }
        return true;
      }
      return false;
    }
    case Cond::Kind::kCompare: {
      if (c.op == RelOp::kEq || c.op == RelOp::kNe) {
        HostList l, r;
        eval_list(c.left, rule, a, m, l);
        eval_list(c.right, rule, a, m, r);
        return lists_equal(l, r) == (c.op == RelOp::kEq);
      }
      std::int32_t l = eval_int(c.left[0], rule, a, m);
      std::int32_t r = eval_int(c.right[0], rule, a, m);
      switch (c.op) {
        case RelOp::kLt: return l < r;
        case RelOp::kLe: return l <= r;
        case RelOp::kGt: return l > r;
        case RelOp::kGe: return l >= r;
        default: return false;
      }
    }
    case Cond::Kind::kTypeCheck: {
      AtomSpan v = a.value(c.var);
      if (v.size() != 1) return false;
      switch (c.type) {
        case VarType::kInt: return is_int(v[0]);
        case VarType::kString: return is_string(v[0]);
        case VarType::kChar: return is_string(v[0]) && std::get<std::string>(v[0]).size() == 1;
        case VarType::kAtom: return true;
        case VarType::kList: return true;
      }
      return false;
    }
  }
  return false;
}

namespace {

bool atom_fits(VarType t, const Atom& x) {
  switch (t) {
    case VarType::kInt: return is_int(x);
    case VarType::kString: return is_string(x);
    case VarType::kChar: return is_string(x) && std::get<std::string>(x).size() == 1;
    case VarType::kAtom: return true;
    case VarType::kList: return true;
  }
  return false;
}

// One pattern item against one host atom.
bool match_item(const Expr& item, const Rule& rule, AtomSpan host, std::size_t pos,
                Assignment& a, std::vector<int>& trail) {
  const Atom& x = host[pos];
  switch (item.kind) {
    case Expr::Kind::kIntLit:
      return is_int(x) && std::get<std::int32_t>(x) == item.value;
    case Expr::Kind::kStrLit:
      return is_string(x) && std::get<std::string>(x) == item.text;
    case Expr::Kind::kVar: {
      if (a.bound(item.index)) {
        AtomSpan v = a.value(item.index);
        return v.size() == 1 && v[0] == x;
      }
      if (!atom_fits(rule.variables[item.index].type, x)) return false;
      a.bind(item.index, host.subspan(pos, 1));
      trail.push_back(item.index);
      return true;
    }
    default:
      return false;
  }
}

}  // namespace

bool label_match(const LabelExpr& pattern, const Rule& rule, AtomSpan host, Assignment& a,
                 std::vector<int>& trail) {
  const std::size_t mark = trail.size();
  auto fail = [&] {
    while (trail.size() > mark) {
      a.unbind(trail.back());
      trail.pop_back();
    }
    return false;
  };
  const auto& items = pattern.items;
  std::size_t list_pos = items.size();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].kind == Expr::Kind::kVar && rule.variables[items[i].index].type == VarType::kList) {
      list_pos = i;
      break;
    }
  }
  if (list_pos == items.size()) {
    if (host.size() != items.size()) return false;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!match_item(items[i], rule, host, i, a, trail)) return fail();
    }
    return true;
  }
  std::size_t fixed = items.size() - 1;
  if (host.size() < fixed) return false;
  std::size_t suffix = items.size() - list_pos - 1;
  for (std::size_t i = 0; i < list_pos; ++i) {
    if (!match_item(items[i], rule, host, i, a, trail)) return fail();
  }
  for (std::size_t k = 0; k < suffix; ++k) {
    if (!match_item(items[list_pos + 1 + k], rule, host, host.size() - suffix + k, a, trail)) {
      return fail();
    }
  }
  AtomSpan middle = host.subspan(list_pos, host.size() - fixed);
  int v = items[list_pos].index;
  if (a.bound(v)) {
    if (!lists_equal(a.value(v), middle)) return fail();
  } else {
    a.bind(v, middle);
    trail.push_back(v);
  }
  return true;
}

InstantiatedRhs instantiate_rhs(const Rule& rule, const Assignment& a, const MatchView& m,
                                std::span<Edge* const> edge_images) {
  InstantiatedRhs out;
  const auto& rn = rule.rhs.nodes;
  out.node_labels.resize(rn.size());
  out.node_marks.resize(rn.size());
  for (std::size_t i = 0; i < rn.size(); ++i) {
    eval_list(rn[i].label.items, rule, a, m, out.node_labels[i]);
    Mark mk = rn[i].label.mark;
    if (mk == Mark::kAny) {
      int l = rule.rhs_node_to_lhs[i];
      if (l < 0) throw EvalError("any mark on a created node in rule " + rule.name);
      mk = m.nodes[l]->mark;
    }
    out.node_marks[i] = mk;
  }
  const auto& re = rule.rhs.edges;
  out.edge_labels.resize(re.size());
  out.edge_marks.resize(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) {
    eval_list(re[i].label.items, rule, a, m, out.edge_labels[i]);
    Mark mk = re[i].label.mark;
    if (mk == Mark::kAny) {
      int l = rule.rhs_edge_to_lhs[i];
      if (l < 0) throw EvalError("any mark on a created edge in rule " + rule.name);
      mk = edge_images[l]->mark;
    }
    out.edge_marks[i] = mk;
  }
  return out;
}

bool all_nodes_reach_root(const PatternGraph& g) {
  std::vector<bool> seen(g.nodes.size(), false);
  std::vector<int> stack;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.nodes[i].root) {
      seen[i] = true;
      stack.push_back(static_cast<int>(i));
    }
  }
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (const PatternEdge& e : g.edges) {
      int other = -1;
      if (e.source == u) other = e.target;
      if (e.target == u) other = e.source;
      if (other >= 0 && !seen[other]) {
        seen[other] = true;
        stack.push_back(other);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

namespace {

bool restricted_type(VarType t) {
  return t == VarType::kList || t == VarType::kString || t == VarType::kAtom;
}

void count_vars(const Expr& e, const Rule& rule, std::vector<int>& counts) {
  if (e.kind == Expr::Kind::kVar && restricted_type(rule.variables[e.index].type)) {
    ++counts[e.index];
  }
  for (const Expr& x : e.args) count_vars(x, rule, counts);
}

bool repeats(const PatternGraph& g, const Rule& rule) {
  std::vector<int> counts(rule.variables.size(), 0);
  for (const auto& n : g.nodes) {
    for (const Expr& e : n.label.items) count_vars(e, rule, counts);
  }
  for (const auto& ed : g.edges) {
    for (const Expr& e : ed.label.items) count_vars(e, rule, counts);
  }
  return std::any_of(counts.begin(), counts.end(), [](int c) { return c > 1; });
}

bool mentions_restricted(const std::vector<Expr>& side, const Rule& rule) {
  std::vector<int> counts(rule.variables.size(), 0);
  for (const Expr& e : side) count_vars(e, rule, counts);
  return std::any_of(counts.begin(), counts.end(), [](int c) { return c > 0; });
}

bool simple(const Cond& c, const Rule& rule) {
  switch (c.kind) {
    case Cond::Kind::kEdge: return false;
    case Cond::Kind::kCompare:
      if ((c.op == RelOp::kEq || c.op == RelOp::kNe) && mentions_restricted(c.left, rule) &&
          mentions_restricted(c.right, rule)) {
        return false;
      }
      return true;
    default:
      return std::all_of(c.args.begin(), c.args.end(),
                         [&](const Cond& x) { return simple(x, rule); });
  }
}

}  // namespace

FastRuleReport check_fast_rule(const Rule& rule) {
  FastRuleReport r;
  r.rooted = all_nodes_reach_root(rule.lhs);
  if (!r.rooted) r.diagnostics.push_back("(1) some left-hand node is not reachable from a root");
  r.no_repeated_variables = !repeats(rule.lhs, rule) && !repeats(rule.rhs, rule);
  if (!r.no_repeated_variables) {
    r.diagnostics.push_back("(2) a list, string or atom variable occurs more than once");
  }
  r.simple_condition = !rule.condition || simple(*rule.condition, rule);
  if (!r.simple_condition) {
    r.diagnostics.push_back("(3) condition uses an edge predicate or compares restricted variables");
  }
  r.fast = r.rooted && r.no_repeated_variables && r.simple_condition;
  return r;
}

}  // namespace gp2
