#include "gp2/corpus.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gp2 {

namespace {

constexpr auto S = Outcome::Kind::kSuccess;
constexpr auto F = Outcome::Kind::kFail;

}  // namespace

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries{
      {"is-discrete", "is-discrete.gp2", true,
       {{"empty.host", S}, {"discrete3.host", S}, {"one-edge.host", F}, {"path3.host", F}}},
      {"is-bin-dag", "is-bin-dag.gp2", true,
       {{"empty.host", S}, {"tree7.host", S}, {"diamond.host", S}, {"discrete3.host", S},
        {"cycle3.host", F}, {"wide.host", F}, {"grid3x3.host", S}}},
      {"is-tree", "is-tree.gp2", true,
       {{"tree7.host", S}, {"path3.host", S}, {"grid2x2.host", F}, {"discrete2.host", F},
        {"cycle3.host", F}}},
      {"is-series-par", "is-series-par.gp2", true,
       {{"one-edge.host", S}, {"diamond.host", S}, {"sp-nested.host", S}, {"grid2x2.host", S},
        {"grid3x3.host", F}, {"discrete2.host", F}, {"empty.host", F}}},
      {"gen-discrete", "gen-discrete.gp2", false,
       {{"seed1.host", S}, {"seed3.host", S}}},
      {"gen-tree", "gen-tree.gp2", false,
       {{"seed0.host", S}, {"seed2.host", S}}},
      {"gen-star", "gen-star.gp2", false,
       {{"seed1.host", S}, {"seed5.host", S}}},
      {"gen-sierpinski", "gen-sierpinski.gp2", false,
       {{"seed0.host", S}, {"seed2.host", S}}},
      {"is-con", "is-con.gp2", true,
       {{"empty.host", S}, {"grid2x2.host", S}, {"tree7.host", S}, {"discrete2.host", F}}},
      {"trans-closure", "trans-closure.gp2", false,
       {{"path3.host", S}, {"cycle3.host", S}, {"diamond.host", S}, {"labelled.host", S}}},
  };
  return entries;
}

const CorpusEntry* find_entry(std::string_view id) {
  for (const CorpusEntry& e : corpus_entries()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::filesystem::path corpus_dir() {
  if (const char* env = std::getenv("GP2_CORPUS_DIR"); env != nullptr && *env != '\0') return env;
#ifdef GP2_SOURCE_CORPUS_DIR
  return GP2_SOURCE_CORPUS_DIR;
#else
  return "corpus";
#endif
}

std::filesystem::path program_path(const CorpusEntry& e, const std::filesystem::path& root) {
  return root / "programs" / e.file;
}

std::filesystem::path host_path(std::string_view host, const std::filesystem::path& root) {
  return root / "hosts" / host;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gp2
