#pragma once

#include "gp2/ast.hpp"
#include "gp2/textio.hpp"

namespace gp2::detail {

[[noreturn]] inline void semantic_error(int line, int column, const std::string& msg) {
  throw SourceError(SourceError::Kind::kSemantic, line, column, msg);
}

// Fills interface maps and degree counts, then checks binding, typing and
// mark rules.
void check_rule(Rule& rule);

// Resolves names in commands, rejects recursion, stray breaks, bad Main.
void check_program(Program& program);

}  // namespace gp2::detail
