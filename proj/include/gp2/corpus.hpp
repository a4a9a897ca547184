// Bundled programs and host fixtures.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gp2/engine.hpp"

namespace gp2 {

struct Fixture {
  std::string host;  // file name under hosts/
  Outcome::Kind expected;
};

struct CorpusEntry {
  std::string id;
  std::string file;  // file name under programs/
  bool recogniser = false;
  std::vector<Fixture> fixtures;
};

const std::vector<CorpusEntry>& corpus_entries();
// nullptr if unknown.
const CorpusEntry* find_entry(std::string_view id);

// GP2_CORPUS_DIR from the environment, else the source tree's corpus/.
std::filesystem::path corpus_dir();
std::filesystem::path program_path(const CorpusEntry& e, const std::filesystem::path& root = corpus_dir());
std::filesystem::path host_path(std::string_view host, const std::filesystem::path& root = corpus_dir());

// Throws std::runtime_error.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace gp2
