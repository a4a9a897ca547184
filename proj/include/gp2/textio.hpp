// Program and host graph text formats.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gp2/ast.hpp"
#include "gp2/graph.hpp"

namespace gp2 {

class SourceError : public std::runtime_error {
 public:
  enum class Kind { kLex, kSyntax, kSemantic };
  SourceError(Kind kind, int line, int column, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Kind kind_;
  int line_;
  int column_;
  std::string detail_;
};

std::string_view error_kind_name(SourceError::Kind k);

// Parses and checks a whole program; procedures are kept uninlined.
Program parse_program(std::string_view text);
// A single rule declaration, checked on its own.
Rule parse_rule(std::string_view text);

struct HostGraph {
  std::unique_ptr<Graph> graph;
  IdMap ids;
};

HostGraph parse_host_graph(std::string_view text, GraphOptions opts = {});
std::string print_graph(const Graph& g);

enum class SourceKind { kProgram, kRule, kGraph };
// Throws SourceError; parse only.
void validate(SourceKind kind, std::string_view text);

}  // namespace gp2
