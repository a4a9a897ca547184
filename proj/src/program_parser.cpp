#include <optional>

#include "gp2/textio.hpp"
#include "lexer.hpp"
#include "parse_internal.hpp"

namespace gp2 {
namespace {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

bool is_relop(Tok t) {
  return t == Tok::kEq || t == Tok::kNe || t == Tok::kLt || t == Tok::kLe || t == Tok::kGt ||
         t == Tok::kGe;
}

std::optional<VarType> type_word(std::string_view w) {
  if (w == "int") return VarType::kInt;
  if (w == "char") return VarType::kChar;
  if (w == "string") return VarType::kString;
  if (w == "atom") return VarType::kAtom;
  if (w == "list") return VarType::kList;
  return std::nullopt;
}

bool is_keyword(std::string_view w) {
  return w == "if" || w == "then" || w == "else" || w == "try" || w == "skip" || w == "fail" ||
         w == "break" || w == "where" || w == "and" || w == "or" || w == "not" || w == "edge" ||
         w == "empty" || w == "indeg" || w == "outdeg" || w == "length";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : ts_(detail::tokenize(text)) {}

  Program program() {
    Program p;
    bool saw_main = false;
    while (!ts_.at(Tok::kEnd)) {
      const Token& name = ts_.expect(Tok::kIdent, "declaration name");
      if (is_keyword(name.text)) ts_.fail("keyword '" + name.text + "' cannot name a declaration");
      if (ts_.at(Tok::kEq)) {
        ts_.next();
        if (name.text == "Main") {
          if (saw_main) detail::semantic_error(name.line, name.column, "Main declared twice");
          saw_main = true;
          p.main = sequence();
        } else {
          p.procedures.push_back({name.text, sequence()});
        }
      } else if (ts_.at(Tok::kLParen)) {
        Rule r = rule_after_name(name);
        if (p.rule_index.count(r.name) != 0) {
          detail::semantic_error(name.line, name.column, "rule " + r.name + " declared twice");
        }
        p.rule_index.emplace(r.name, static_cast<int>(p.rules.size()));
        p.rules.push_back(std::move(r));
      } else {
        ts_.fail("expected '=' or '(' after " + name.text);
      }
    }
    if (!saw_main) {
      const Token& t = ts_.peek();
      detail::semantic_error(t.line, t.column, "program has no Main");
    }
    return p;
  }

  Rule single_rule() {
    const Token& name = ts_.expect(Tok::kIdent, "rule name");
    Rule r = rule_after_name(name);
    ts_.expect(Tok::kEnd, "end of input");
    return r;
  }

 private:
  // Commands

  Command sequence() {
    const Token& start = ts_.peek();
    std::vector<Command> items;
    items.push_back(command());
    while (ts_.accept(Tok::kSemi)) items.push_back(command());
    if (items.size() == 1) return std::move(items[0]);
    Command c = make_seq(std::move(items));
    c.line = start.line;
    c.column = start.column;
    return c;
  }

  Command command() {
    const Token& start = ts_.peek();
    Command c;
    if (ts_.accept_word("if")) {
      c.kind = Command::Kind::kIf;
      c.body.push_back(command());
      ts_.expect_word("then");
      c.body.push_back(command());
      c.body.push_back(ts_.accept_word("else") ? command() : skip());
    } else if (ts_.accept_word("try")) {
      c.kind = Command::Kind::kTry;
      c.body.push_back(command());
      c.body.push_back(ts_.accept_word("then") ? command() : skip());
      c.body.push_back(ts_.accept_word("else") ? command() : skip());
    } else {
      c = block();
    }
    c.line = start.line;
    c.column = start.column;
    return c;
  }

  static Command skip() { return Command{}; }

  Command block() {
    const Token& start = ts_.peek();
    Command c;
    if (ts_.accept(Tok::kLParen)) {
      c = sequence();
      ts_.expect(Tok::kRParen, "')'");
    } else if (ts_.accept(Tok::kLBrace)) {
      c.kind = Command::Kind::kRuleSet;
      do {
        const Token& n = ts_.expect(Tok::kIdent, "rule name");
        Command call;
        call.kind = Command::Kind::kCall;
        call.name = n.text;
        call.line = n.line;
        call.column = n.column;
        c.body.push_back(std::move(call));
      } while (ts_.accept(Tok::kComma));
      ts_.expect(Tok::kRBrace, "'}'");
    } else if (ts_.accept_word("skip")) {
      c.kind = Command::Kind::kSkip;
    } else if (ts_.accept_word("fail")) {
      c.kind = Command::Kind::kFail;
    } else if (ts_.accept_word("break")) {
      c.kind = Command::Kind::kBreak;
    } else if (ts_.at(Tok::kIdent) && !is_keyword(ts_.peek().text)) {
      c.kind = Command::Kind::kCall;
      c.name = ts_.next().text;
    } else {
      ts_.fail("expected a command");
    }
    c.line = start.line;
    c.column = start.column;
    if (ts_.accept(Tok::kBang)) {
      Command loop = make_loop(std::move(c));
      loop.line = start.line;
      loop.column = start.column;
      return loop;
    }
    return c;
  }

  // Rules

  Rule rule_after_name(const Token& name) {
    Rule r;
    r.name = name.text;
    r.line = name.line;
    rule_ = &r;
    ts_.expect(Tok::kLParen, "'('");
    if (!ts_.at(Tok::kRParen)) {
      do {
        std::vector<const Token*> names;
        do {
          names.push_back(&ts_.expect(Tok::kIdent, "variable name"));
        } while (ts_.accept(Tok::kComma));
        ts_.expect(Tok::kColon, "':'");
        const Token& tt = ts_.expect(Tok::kIdent, "variable type");
        auto type = type_word(tt.text);
        if (!type) detail::semantic_error(tt.line, tt.column, "unknown type " + tt.text);
        for (const Token* n : names) {
          if (is_keyword(n->text)) {
            detail::semantic_error(n->line, n->column, "keyword used as variable name");
          }
          if (r.variable_index(n->text) >= 0) {
            detail::semantic_error(n->line, n->column, "variable " + n->text + " declared twice");
          }
          r.variables.push_back({n->text, *type});
        }
      } while (ts_.accept(Tok::kSemi));
    }
    ts_.expect(Tok::kRParen, "')'");
    r.lhs = pattern(false);
    ts_.expect(Tok::kArrow, "'=>'");
    r.rhs = pattern(true);
    if (ts_.accept_word("where")) r.condition = condition();
    detail::check_rule(r);
    rule_ = nullptr;
    return r;
  }

  std::string item_id() {
    if (ts_.at(Tok::kIdent) || ts_.at(Tok::kInt)) return ts_.next().text;
    ts_.fail("expected a node or edge id");
  }

  int lhs_node(const Token& at, const std::string& id) {
    for (std::size_t i = 0; i < rule_->lhs.nodes.size(); ++i) {
      if (rule_->lhs.nodes[i].id == id) return static_cast<int>(i);
    }
    detail::semantic_error(at.line, at.column, "no left-hand node " + id);
  }

  PatternGraph pattern(bool rhs) {
    PatternGraph g;
    current_ = &g;
    ts_.expect(Tok::kLBracket, "'['");
    while (ts_.accept(Tok::kLParen)) {
      const Token& at = ts_.peek();
      PatternNode n;
      n.id = item_id();
      for (const auto& other : g.nodes) {
        if (other.id == n.id) detail::semantic_error(at.line, at.column, "node " + n.id + " declared twice");
      }
      if (ts_.accept(Tok::kLParen)) {
        ts_.expect_word("R");
        ts_.expect(Tok::kRParen, "')'");
        n.root = true;
      }
      ts_.expect(Tok::kComma, "','");
      n.label = label();
      ts_.expect(Tok::kRParen, "')'");
      g.nodes.push_back(std::move(n));
    }
    ts_.expect(Tok::kBar, "'|'");
    while (ts_.accept(Tok::kLParen)) {
      const Token& at = ts_.peek();
      PatternEdge e;
      e.id = item_id();
      for (const auto& other : g.edges) {
        if (other.id == e.id) detail::semantic_error(at.line, at.column, "edge " + e.id + " declared twice");
      }
      if (ts_.accept(Tok::kLParen)) {
        ts_.expect_word("B");
        ts_.expect(Tok::kRParen, "')'");
        e.bidirectional = true;
      }
      ts_.expect(Tok::kComma, "','");
      for (int* end : {&e.source, &e.target}) {
        const Token& et = ts_.peek();
        std::string id = item_id();
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
          if (g.nodes[i].id == id) *end = static_cast<int>(i);
        }
        if (*end < 0) detail::semantic_error(et.line, et.column, "edge endpoint " + id + " is not a node");
        ts_.expect(Tok::kComma, "','");
      }
      e.label = label();
      ts_.expect(Tok::kRParen, "')'");
      g.edges.push_back(std::move(e));
    }
    ts_.expect(Tok::kRBracket, "']'");
    current_ = nullptr;
    (void)rhs;
    return g;
  }

  LabelExpr label() {
    LabelExpr l;
    if (!ts_.accept_word("empty")) l.items = list_items();
    if (ts_.accept(Tok::kHash)) {
      const Token& t = ts_.expect(Tok::kIdent, "mark name");
      auto m = parse_mark(t.text);
      if (!m) detail::semantic_error(t.line, t.column, "unknown mark " + t.text);
      l.mark = *m;
    }
    return l;
  }

  std::vector<Expr> list_items() {
    std::vector<Expr> items;
    items.push_back(concat());
    while (ts_.accept(Tok::kColon)) items.push_back(concat());
    return items;
  }

  Expr binary(Expr::Kind k, Expr l, Expr r, const Token& at) {
    Expr e;
    e.kind = k;
    e.line = at.line;
    e.column = at.column;
    e.args.push_back(std::move(l));
    e.args.push_back(std::move(r));
    return e;
  }

  Expr concat() {
    Expr e = additive();
    while (ts_.at(Tok::kDot)) {
      const Token& op = ts_.next();
      e = binary(Expr::Kind::kConcat, std::move(e), additive(), op);
    }
    return e;
  }

  Expr additive() {
    Expr e = multiplicative();
    while (ts_.at(Tok::kPlus) || ts_.at(Tok::kMinus)) {
      const Token& op = ts_.next();
      Expr::Kind k = op.kind == Tok::kPlus ? Expr::Kind::kAdd : Expr::Kind::kSub;
      e = binary(k, std::move(e), multiplicative(), op);
    }
    return e;
  }

  Expr multiplicative() {
    Expr e = unary();
    while (ts_.at(Tok::kStar) || ts_.at(Tok::kSlash)) {
      const Token& op = ts_.next();
      Expr::Kind k = op.kind == Tok::kStar ? Expr::Kind::kMul : Expr::Kind::kDiv;
      e = binary(k, std::move(e), unary(), op);
    }
    return e;
  }

  Expr unary() {
    if (ts_.at(Tok::kMinus)) {
      const Token& op = ts_.next();
      Expr inner = unary();
      Expr e;
      e.line = op.line;
      e.column = op.column;
      if (inner.kind == Expr::Kind::kIntLit) {
        e = inner;
        e.value = static_cast<std::int32_t>(0u - static_cast<std::uint32_t>(inner.value));
        return e;
      }
      e.kind = Expr::Kind::kNeg;
      e.args.push_back(std::move(inner));
      return e;
    }
    return primary();
  }

  Expr primary() {
    const Token& t = ts_.peek();
    Expr e;
    e.line = t.line;
    e.column = t.column;
    if (ts_.at(Tok::kInt)) {
      ts_.next();
      if (t.overflow || t.number > 2147483648ull) {
        detail::semantic_error(t.line, t.column, "integer does not fit 32 bits");
      }
      e.kind = Expr::Kind::kIntLit;
      e.value = static_cast<std::int32_t>(static_cast<std::uint32_t>(t.number));
      return e;
    }
    if (ts_.at(Tok::kString)) {
      ts_.next();
      e.kind = Expr::Kind::kStrLit;
      e.text = t.text;
      return e;
    }
    if (ts_.accept(Tok::kLParen)) {
      e = concat();
      ts_.expect(Tok::kRParen, "')'");
      return e;
    }
    if (ts_.at(Tok::kIdent)) {
      ts_.next();
      if ((t.text == "indeg" || t.text == "outdeg") && ts_.accept(Tok::kLParen)) {
        const Token& at = ts_.peek();
        e.kind = t.text == "indeg" ? Expr::Kind::kIndeg : Expr::Kind::kOutdeg;
        e.index = lhs_node(at, item_id());
        ts_.expect(Tok::kRParen, "')'");
        return e;
      }
      if (t.text == "length" && ts_.accept(Tok::kLParen)) {
        const Token& v = ts_.expect(Tok::kIdent, "variable");
        e.kind = Expr::Kind::kLength;
        e.index = variable(v);
        ts_.expect(Tok::kRParen, "')'");
        return e;
      }
      e.kind = Expr::Kind::kVar;
      e.index = variable(t);
      return e;
    }
    ts_.fail("expected an expression");
  }

  int variable(const Token& t) {
    if (is_keyword(t.text)) ts_.fail("unexpected keyword '" + t.text + "'");
    int v = rule_->variable_index(t.text);
    if (v < 0) detail::semantic_error(t.line, t.column, "undeclared variable " + t.text);
    return v;
  }

  // Conditions

  Cond condition() {
    Cond c = conjunction();
    while (ts_.accept_word("or")) c = join(Cond::Kind::kOr, std::move(c), conjunction());
    return c;
  }

  Cond conjunction() {
    Cond c = negation();
    while (ts_.accept_word("and")) c = join(Cond::Kind::kAnd, std::move(c), negation());
    return c;
  }

  static Cond join(Cond::Kind k, Cond a, Cond b) {
    Cond c;
    c.kind = k;
    c.args.push_back(std::move(a));
    c.args.push_back(std::move(b));
    return c;
  }

  Cond negation() {
    if (ts_.accept_word("not")) {
      Cond c;
      c.kind = Cond::Kind::kNot;
      c.args.push_back(negation());
      return c;
    }
    return basic_condition();
  }

  Cond basic_condition() {
    if (ts_.at(Tok::kLParen)) {
      std::size_t mark = ts_.position();
      try {
        ts_.next();
        Cond c = condition();
        ts_.expect(Tok::kRParen, "')'");
        if (!is_relop(ts_.peek().kind) && !ts_.at(Tok::kColon) && !ts_.at(Tok::kDot) &&
            !ts_.at(Tok::kPlus) && !ts_.at(Tok::kMinus) && !ts_.at(Tok::kStar) &&
            !ts_.at(Tok::kSlash)) {
          return c;
        }
      } catch (const SourceError&) {
      }
      ts_.rewind(mark);
      return comparison();
    }
    if (ts_.at_word("edge") && ts_.peek(1).kind == Tok::kLParen) {
      ts_.next();
      ts_.next();
      Cond c;
      c.kind = Cond::Kind::kEdge;
      const Token& a = ts_.peek();
      c.source = lhs_node(a, item_id());
      ts_.expect(Tok::kComma, "','");
      const Token& b = ts_.peek();
      c.target = lhs_node(b, item_id());
      if (ts_.accept(Tok::kComma)) {
        c.label_mark_given = has_mark_ahead();
        c.label = label();
      }
      ts_.expect(Tok::kRParen, "')'");
      return c;
    }
    if (ts_.at(Tok::kIdent) && ts_.peek(1).kind == Tok::kLParen) {
      auto type = type_word(ts_.peek().text);
      if (type && *type != VarType::kList) {
        ts_.next();
        ts_.next();
        Cond c;
        c.kind = Cond::Kind::kTypeCheck;
        c.type = *type;
        c.var = variable(ts_.expect(Tok::kIdent, "variable"));
        ts_.expect(Tok::kRParen, "')'");
        return c;
      }
    }
    return comparison();
  }

  bool has_mark_ahead() const {
    for (std::size_t k = 0;; ++k) {
      Tok t = ts_.peek(k).kind;
      if (t == Tok::kHash) return true;
      if (t == Tok::kRParen || t == Tok::kEnd) return false;
    }
  }

  Cond comparison() {
    Cond c;
    c.kind = Cond::Kind::kCompare;
    if (ts_.accept_word("empty")) {
    } else {
      c.left = list_items();
    }
    if (!is_relop(ts_.peek().kind)) ts_.fail("expected a comparison operator");
    switch (ts_.next().kind) {
      case Tok::kEq: c.op = RelOp::kEq; break;
      case Tok::kNe: c.op = RelOp::kNe; break;
      case Tok::kLt: c.op = RelOp::kLt; break;
      case Tok::kLe: c.op = RelOp::kLe; break;
      case Tok::kGt: c.op = RelOp::kGt; break;
      default: c.op = RelOp::kGe; break;
    }
    if (!ts_.accept_word("empty")) c.right = list_items();
    return c;
  }

  TokenStream ts_;
  Rule* rule_ = nullptr;
  PatternGraph* current_ = nullptr;
};

}  // namespace

Program parse_program(std::string_view text) {
  Program p = Parser(text).program();
  detail::check_program(p);
  return p;
}

Rule parse_rule(std::string_view text) { return Parser(text).single_rule(); }

void validate(SourceKind kind, std::string_view text) {
  switch (kind) {
    case SourceKind::kProgram: parse_program(text); break;
    case SourceKind::kRule: parse_rule(text); break;
    case SourceKind::kGraph: parse_host_graph(text); break;
  }
}

}  // namespace gp2
