#include <limits>
#include <unordered_set>

#include "gp2/textio.hpp"
#include "lexer.hpp"

namespace gp2 {
namespace {

using detail::Tok;
using detail::TokenStream;

constexpr std::uint64_t kMaxId = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

[[noreturn]] void semantic(const detail::Token& at, const std::string& msg) {
  throw SourceError(SourceError::Kind::kSemantic, at.line, at.column, msg);
}

std::uint64_t read_id(TokenStream& ts, std::string_view what) {
  if (ts.at(Tok::kMinus)) ts.fail(std::string(what) + " must not be negative");
  if (!ts.at(Tok::kInt)) ts.fail(std::string(what) + " must be an integer");
  const detail::Token& t = ts.next();
  if (t.overflow || t.number > kMaxId) semantic(t, std::string(what) + " exceeds 2^63-1");
  return t.number;
}

Atom read_atom(TokenStream& ts) {
  if (ts.at(Tok::kString)) return ts.next().text;
  bool neg = ts.accept(Tok::kMinus);
  if (!ts.at(Tok::kInt)) ts.fail("malformed label");
  const detail::Token& t = ts.next();
  std::uint64_t limit = neg ? 2147483648ull : 2147483647ull;
  if (t.overflow || t.number > limit) semantic(t, "integer does not fit 32 bits");
  std::int64_t v = neg ? -static_cast<std::int64_t>(t.number) : static_cast<std::int64_t>(t.number);
  return static_cast<std::int32_t>(v);
}

void read_label(TokenStream& ts, HostList& atoms, Mark& mark) {
  if (!ts.accept_word("empty")) {
    atoms.push_back(read_atom(ts));
    while (ts.accept(Tok::kColon)) atoms.push_back(read_atom(ts));
  }
  mark = Mark::kNone;
  if (ts.accept(Tok::kHash)) {
    const detail::Token& t = ts.expect(Tok::kIdent, "mark name");
    auto m = parse_mark(t.text);
    if (!m || *m == Mark::kAny) semantic(t, "unknown mark '" + t.text + "'");
    mark = *m;
  }
}

struct NodeRec {
  std::uint64_t id;
  HostList label;
  Mark mark;
  bool root;
};

struct EdgeRec {
  std::uint64_t source;
  std::uint64_t target;
  HostList label;
  Mark mark;
};

}  // namespace

HostGraph parse_host_graph(std::string_view text, GraphOptions opts) {
  TokenStream ts(detail::tokenize(text));
  HostGraph out;
  out.graph = std::make_unique<Graph>(opts);
  std::vector<NodeRec> nodes;
  std::vector<EdgeRec> edges;

  ts.expect(Tok::kLBracket, "'['");
  while (ts.at(Tok::kLParen)) {
    ts.next();
    const detail::Token& id_tok = ts.peek();
    NodeRec r{read_id(ts, "node id"), {}, Mark::kNone, false};
    if (ts.accept(Tok::kLParen)) {
      ts.expect_word("R");
      ts.expect(Tok::kRParen, "')'");
      r.root = true;
    }
    ts.expect(Tok::kComma, "','");
    const detail::Token& label_tok = ts.peek();
    read_label(ts, r.label, r.mark);
    if (r.mark == Mark::kDashed) semantic(label_tok, "dashed is an edge mark");
    ts.expect(Tok::kRParen, "')'");
    if (!out.ids.insert(r.id, nullptr)) semantic(id_tok, "duplicate node id " + std::to_string(r.id));
    nodes.push_back(std::move(r));
  }
  ts.expect(Tok::kBar, "'|'");
  std::unordered_set<std::uint64_t> edge_ids;
  while (ts.at(Tok::kLParen)) {
    ts.next();
    const detail::Token& id_tok = ts.peek();
    std::uint64_t eid = read_id(ts, "edge id");
    if (!edge_ids.insert(eid).second) semantic(id_tok, "duplicate edge id " + std::to_string(eid));
    ts.expect(Tok::kComma, "','");
    EdgeRec r{};
    for (std::uint64_t* end : {&r.source, &r.target}) {
      const detail::Token& t = ts.peek();
      *end = read_id(ts, "node id");
      if (!out.ids.contains(*end)) semantic(t, "edge refers to unknown node " + std::to_string(*end));
      ts.expect(Tok::kComma, "','");
    }
    const detail::Token& label_tok = ts.peek();
    read_label(ts, r.label, r.mark);
    if (r.mark == Mark::kGrey) semantic(label_tok, "grey is a node mark");
    ts.expect(Tok::kRParen, "')'");
    edges.push_back(std::move(r));
  }
  ts.expect(Tok::kRBracket, "']'");
  ts.expect(Tok::kEnd, "end of input");

  // Chains push at the head, so insert backwards to iterate in file order.
  Graph& g = *out.graph;
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    out.ids.set(it->id, g.add_node(it->label, it->mark, it->root));
  }
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
    g.add_edge(out.ids.lookup(it->source), out.ids.lookup(it->target), it->label, it->mark);
  }
  return out;
}

namespace {

void append_label(std::string& out, AtomSpan atoms, Mark mark) {
  out += format_list(atoms);
  if (mark != Mark::kNone) {
    out += " # ";
    out += mark_name(mark);
  }
}

}  // namespace

std::string print_graph(const Graph& g) {
  std::vector<std::size_t> id(g.node_high_water(), 0);
  std::string out = "[ ";
  std::size_t next = 0;
  for (Node* n : g.node_chain()) {
    id[n->index] = next;
    out += '(';
    out += std::to_string(next++);
    if (g.is_root(n)) out += " (R)";
    out += ", ";
    append_label(out, n->atoms(), n->mark);
    out += ") ";
  }
  out += "| ";
  std::size_t eid = 0;
  for (Node* n : g.node_chain()) {
    for (Edge* e : n->out_edges) {
      out += '(';
      out += std::to_string(eid++);
      out += ", ";
      out += std::to_string(id[e->source->index]);
      out += ", ";
      out += std::to_string(id[e->target->index]);
      out += ", ";
      append_label(out, e->atoms(), e->mark);
      out += ") ";
    }
  }
  out += ']';
  return out;
}

}  // namespace gp2
