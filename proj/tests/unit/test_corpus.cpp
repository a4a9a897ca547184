#include <gtest/gtest.h>

#include <set>

#include "gp2/corpus.hpp"
#include "gp2/textio.hpp"
#include "support.hpp"

using namespace gp2;

namespace {

bool oracle_for(std::string_view id, const testkit::Digraph& d) {
  if (id == "is-discrete") return testkit::oracle_discrete(d);
  if (id == "is-bin-dag") return testkit::oracle_bin_dag(d);
  if (id == "is-tree") return testkit::oracle_arborescence(d);
  if (id == "is-series-par") return testkit::oracle_series_parallel(d);
  if (id == "is-con") return testkit::oracle_weakly_connected(d);
  ADD_FAILURE() << "no oracle for " << id;
  return false;
}

}  // namespace

TEST(Corpus, EntriesResolve) {
  std::set<std::string> ids;
  for (const CorpusEntry& e : corpus_entries()) {
    EXPECT_TRUE(ids.insert(e.id).second) << e.id;
    EXPECT_TRUE(std::filesystem::exists(program_path(e))) << e.id;
    for (const Fixture& f : e.fixtures) EXPECT_TRUE(std::filesystem::exists(host_path(f.host))) << f.host;
  }
  EXPECT_EQ(ids.size(), 10u);
  EXPECT_EQ(find_entry("nope"), nullptr);
  EXPECT_THROW(read_text_file(corpus_dir() / "missing"), std::runtime_error);
}

TEST(Corpus, FixtureOutcomes) {
  for (const CorpusEntry& e : corpus_entries()) {
    std::string prog = read_text_file(program_path(e));
    for (const Fixture& f : e.fixtures) {
      Outcome o = run_program(prog, read_text_file(host_path(f.host)), {});
      EXPECT_EQ(o.kind, f.expected) << e.id << " on " << f.host << ": " << o.diagnostic;
    }
  }
}

TEST(Corpus, RecognisersAgreeWithOraclesOnFixtures) {
  for (const CorpusEntry& e : corpus_entries()) {
    if (!e.recogniser) continue;
    for (const Fixture& f : e.fixtures) {
      HostGraph h = parse_host_graph(read_text_file(host_path(f.host)));
      bool want = oracle_for(e.id, testkit::shape_of(*h.graph));
      EXPECT_EQ(f.expected == Outcome::Kind::kSuccess, want) << e.id << " on " << f.host;
    }
  }
}

TEST(Corpus, SuccessfulRecognitionEmptiesGraph) {
  for (std::string_view id : {"is-discrete", "is-bin-dag", "is-series-par"}) {
    const CorpusEntry& e = *find_entry(id);
    std::string prog = read_text_file(program_path(e));
    for (const Fixture& f : e.fixtures) {
      if (f.expected != Outcome::Kind::kSuccess) continue;
      Outcome o = run_program(prog, read_text_file(host_path(f.host)), {});
      EXPECT_EQ(o.output, "[ | ]") << id << " on " << f.host;
    }
  }
}

TEST(Corpus, ClosureOnPath) {
  Outcome o = run_program(read_text_file(program_path(*find_entry("trans-closure"))),
                          read_text_file(host_path("path3.host")), {});
  ASSERT_EQ(o.kind, Outcome::Kind::kSuccess);
  EXPECT_EQ(o.graph->edge_count(), 3u);
  HostGraph in = parse_host_graph(read_text_file(host_path("path3.host")));
  EXPECT_TRUE(graphs_isomorphic(*o.graph, *testkit::closure_of(*in.graph)));
}

TEST(Corpus, FixturesPrintAsFixpoints) {
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir() / "hosts")) {
    std::string text = read_text_file(entry.path());
    while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.pop_back();
    EXPECT_EQ(print_graph(*parse_host_graph(text).graph), text) << entry.path();
  }
}

TEST(Corpus, DirectoryOverride) {
  ASSERT_EQ(::setenv("GP2_CORPUS_DIR", "/nonexistent/gp2", 1), 0);
  EXPECT_EQ(corpus_dir(), std::filesystem::path("/nonexistent/gp2"));
  ::unsetenv("GP2_CORPUS_DIR");
  EXPECT_TRUE(std::filesystem::exists(corpus_dir() / "programs"));
}
