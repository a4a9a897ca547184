// Command-line front end.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "gp2/engine.hpp"

namespace gp2 {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliInvocation {
  enum class Command { kValidateProgram, kValidateRule, kValidateGraph, kRun, kBench, kHelp };
  Command command = Command::kHelp;
  std::string path;  // file to validate, program to run, or bench config
  std::string host;
  std::string output_dir;
  ExecConfig config;
  std::string help;
};

// args excludes the executable name. Throws UsageError.
CliInvocation parse_args(const std::vector<std::string>& args);

// Exit codes: 0 success, 1 invalid input or usage, 2 program failure.
// fast_exit is set when the caller should skip teardown.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool* fast_exit = nullptr);

}  // namespace gp2
