#include <gtest/gtest.h>

#include "gp2/corpus.hpp"
#include "gp2/match.hpp"
#include "gp2/rules.hpp"
#include "gp2/textio.hpp"

using namespace gp2;

namespace {

HostList ints(std::initializer_list<int> xs) {
  HostList l;
  for (int x : xs) l.emplace_back(std::int32_t{x});
  return l;
}

// First match of rule in the host text, then the instantiated RHS.
InstantiatedRhs apply_labels(const Rule& r, std::string_view host) {
  HostGraph h = parse_host_graph(host);
  Matcher m(r);
  EXPECT_TRUE(m.find(*h.graph, {}));
  return instantiate_rhs(r, m.match().assignment, m.match().view(), m.match().edges);
}

const Rule& corpus_rule(const Program& p, std::string_view name) {
  return p.rules.at(p.rule_index.find(name)->second);
}

Program corpus_program(std::string_view id) {
  return parse_program(read_text_file(program_path(*find_entry(id))));
}

}  // namespace

TEST(Expressions, Arithmetic) {
  Rule r = parse_rule("r(n:int) [ (1, n) | ] => [ (1, n - 1) | ]");
  EXPECT_TRUE(lists_equal(apply_labels(r, "[ (0, 5) | ]").node_labels[0], ints({4})));
  Rule inc = parse_rule("r(i:int) [ (1, i) | ] => [ (1, i + 1) | ]");
  EXPECT_TRUE(lists_equal(apply_labels(inc, "[ (0, 3) | ]").node_labels[0], ints({4})));
}

TEST(Expressions, ConcatBindsLooserThanPlus) {
  Rule r = parse_rule("r(m, n:int) [ (1, m:n) | ] => [ (1, m:n + 1) | ]");
  EXPECT_TRUE(lists_equal(apply_labels(r, "[ (0, 1:0) | ]").node_labels[0], ints({1, 1})));
  Rule pair = parse_rule("r(m, n:int) [ (1, m) (2, n) | ] => [ (1, m:n) (2, n) | ]");
  EXPECT_TRUE(lists_equal(apply_labels(pair, "[ (0, 2) (1, 7) | ]").node_labels[0], ints({2, 7})));
}

TEST(Expressions, DivisionByZero) {
  Rule r = parse_rule("r(n:int) [ (1, n) | ] => [ (1, n / 0) | ]");
  HostGraph h = parse_host_graph("[ (0, 5) | ]");
  Matcher m(r);
  ASSERT_TRUE(m.find(*h.graph, {}));
  EXPECT_THROW(instantiate_rhs(r, m.match().assignment, m.match().view(), m.match().edges),
               EvalError);
}

TEST(Expressions, StringsAndDegrees) {
  Rule r = parse_rule(
      "r(s:string) [ (1, s) (2, empty) | (e1, 1, 2, empty) ] => "
      "[ (1, s . \"!\") (2, outdeg(1):indeg(2)) | (e1, 1, 2, empty) ]");
  InstantiatedRhs out = apply_labels(r, "[ (0, \"hi\") (1, empty) | (0, 0, 1, empty) ]");
  ASSERT_EQ(out.node_labels[0].size(), 1u);
  EXPECT_EQ(std::get<std::string>(out.node_labels[0][0]), "hi!");
  EXPECT_TRUE(lists_equal(out.node_labels[1], ints({1, 1})));
}

TEST(Conditions, NegatedConjunctionTruthTable) {
  Rule r = parse_rule(
      "r() [ (1, empty) (2, empty) | ] => [ (1, empty) (2, empty) | ] "
      "where not (edge(1, 2) and edge(2, 1))");
  ASSERT_TRUE(r.condition.has_value());
  for (int mask = 0; mask < 4; ++mask) {
    Graph g;
    Node* a = g.add_node({});
    Node* b = g.add_node({});
    if (mask & 1) g.add_edge(a, b, {});
    if (mask & 2) g.add_edge(b, a, {});
    std::vector<Node*> img{a, b};
    Assignment asg(0);
    bool want = !((mask & 1) && (mask & 2));
    EXPECT_EQ(eval_cond(*r.condition, r, asg, MatchView{img}), want) << mask;
  }
}

TEST(Conditions, EdgeAndComparison) {
  Program tc = corpus_program("trans-closure");
  const Rule& link = corpus_rule(tc, "link");
  Graph g;
  Node* a = g.add_node({});
  Node* b = g.add_node({});
  Node* c = g.add_node({});
  g.add_edge(a, b, {});
  g.add_edge(b, c, {});
  std::vector<Node*> img{a, b, c};
  Assignment asg(link.variables.size());
  EXPECT_TRUE(eval_cond(*link.condition, link, asg, MatchView{img}));

  Rule gt = parse_rule("r(n:int) [ (1, n) | ] => [ (1, n) | ] where n > 1");
  std::vector<Node*> one{g.add_node(ints({1}))};
  Assignment na(1);
  na.bind(0, one[0]->atoms());
  EXPECT_FALSE(eval_cond(*gt.condition, gt, na, MatchView{one}));
}

TEST(Unification, ListsAtomsAndTypes) {
  std::vector<int> trail;
  Rule r = parse_rule("r(x:list) [ (1, x) | ] => [ (1, x) | ]");
  Assignment a(1);
  HostList host = ints({1, 2});
  ASSERT_TRUE(label_match(r.lhs.nodes[0].label, r, host, a, trail));
  EXPECT_TRUE(lists_equal(a.value(0), host));

  Rule typed = parse_rule("r(n:int) [ (1, n) | ] => [ (1, n) | ]");
  Assignment b(1);
  HostList str{Atom(std::string("a"))};
  EXPECT_FALSE(label_match(typed.lhs.nodes[0].label, typed, str, b, trail));
  EXPECT_FALSE(b.bound(0));

  Rule split = parse_rule("r(a:atom; x:list) [ (1, a:x) | ] => [ (1, a:x) | ]");
  Assignment c(2);
  HostList seven = ints({7});
  ASSERT_TRUE(label_match(split.lhs.nodes[0].label, split, seven, c, trail));
  int ai = split.variable_index("a"), xi = split.variable_index("x");
  EXPECT_TRUE(lists_equal(c.value(ai), seven));
  EXPECT_TRUE(c.value(xi).empty());
}

TEST(Instantiation, MarksAndAny) {
  Program bd = corpus_program("is-bin-dag");
  InstantiatedRhs out = apply_labels(corpus_rule(bd, "set_flag"), "[ (0 (R), empty) | ]");
  EXPECT_EQ(out.node_marks[0], Mark::kGrey);
  EXPECT_TRUE(out.node_labels[0].empty());

  Rule any = parse_rule("r(x:list) [ (1, x # any) | ] => [ (1, x # any) | ]");
  EXPECT_EQ(apply_labels(any, "[ (0, 3 # blue) | ]").node_marks[0], Mark::kBlue);
}

TEST(FastRules, Classifier) {
  Program d = corpus_program("is-discrete");
  FastRuleReport del = check_fast_rule(corpus_rule(d, "del"));
  EXPECT_FALSE(del.fast);
  EXPECT_FALSE(del.rooted);

  Program t = corpus_program("is-tree");
  EXPECT_FALSE(check_fast_rule(corpus_rule(t, "init")).rooted);
  FastRuleReport prune0 = check_fast_rule(corpus_rule(t, "prune0"));
  EXPECT_TRUE(prune0.fast);
  EXPECT_TRUE(prune0.rooted && prune0.no_repeated_variables && prune0.simple_condition);

  Rule repeated = parse_rule("r(x:list) [ (1(R), x) (2, x) | (e1, 1, 2, empty) ] => [ (1(R), x) | ]");
  EXPECT_FALSE(check_fast_rule(repeated).no_repeated_variables);
}
