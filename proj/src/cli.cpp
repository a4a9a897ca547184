#include "gp2/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>

#include "gp2/bench.hpp"
#include "gp2/corpus.hpp"
#include "gp2/textio.hpp"

namespace gp2 {

namespace {

struct Flags {
  std::string validate_program, validate_rule, validate_graph;
  bool fast = false, minimal_gc = false, no_lists = false, no_plans = false, reflect = false;
  std::string output_dir;
  std::vector<std::string> files;
  std::string bench_config;
};

void build(CLI::App& app, Flags& f, CLI::App*& bench) {
  app.set_help_flag("--help", "Show this help");
  app.add_option("-p", f.validate_program, "Validate a program file")->type_name("FILE");
  app.add_option("-r", f.validate_rule, "Validate a single rule file")->type_name("FILE");
  app.add_option("-h", f.validate_graph, "Validate a host graph file")->type_name("FILE");
  app.add_flag("-f", f.fast, "Fast shutdown: exit without tearing down the graph");
  app.add_flag("-g", f.minimal_gc, "Minimal garbage collection (requires -f)");
  app.add_flag("-n", f.no_lists, "Iterate nodes by index scan instead of node lists");
  app.add_flag("-q", f.no_plans, "Match in textual order, without search plan ordering");
  app.add_flag("-m", f.reflect, "Root-reflecting matches");
  app.add_option("-o", f.output_dir, "Also write the output graph to DIR/gp2.output")
      ->type_name("DIR");
  app.add_option("files", f.files, "PROGRAM HOST");
  bench = app.add_subcommand("bench", "Run a benchmark configuration");
  bench->add_option("config", f.bench_config, "Configuration file")->required();
}

}  // namespace

CliInvocation parse_args(const std::vector<std::string>& args) {
  CLI::App app{"GP 2 graph program interpreter", "gp2"};
  Flags f;
  CLI::App* bench = nullptr;
  build(app, f, bench);
  std::vector<const char*> argv{"gp2"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  CliInvocation inv;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    inv.command = CliInvocation::Command::kHelp;
    inv.help = app.help();
    return inv;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  inv.config.fast_shutdown = f.fast;
  inv.config.minimal_gc = f.minimal_gc;
  inv.config.iteration_backend = f.no_lists ? IterationBackend::kIndexScan : IterationBackend::kChain;
  inv.config.optimize_plans = !f.no_plans;
  inv.config.root_mode = f.reflect ? RootMode::kReflect : RootMode::kPreserve;
  inv.output_dir = f.output_dir;
  if (f.minimal_gc && !f.fast) throw UsageError("-g requires fast shutdown (-f)");

  int validations = !f.validate_program.empty() + !f.validate_rule.empty() + !f.validate_graph.empty();
  if (bench->parsed()) {
    if (validations != 0 || !f.files.empty()) throw UsageError("bench takes only a configuration file");
    inv.command = CliInvocation::Command::kBench;
    inv.path = f.bench_config;
    return inv;
  }
  if (validations > 1) throw UsageError("choose one of -p, -r, -h");
  if (validations == 1) {
    if (!f.files.empty()) throw UsageError("validation takes a single file");
    if (!f.validate_program.empty()) {
      inv.command = CliInvocation::Command::kValidateProgram;
      inv.path = f.validate_program;
    } else if (!f.validate_rule.empty()) {
      inv.command = CliInvocation::Command::kValidateRule;
      inv.path = f.validate_rule;
    } else {
      inv.command = CliInvocation::Command::kValidateGraph;
      inv.path = f.validate_graph;
    }
    return inv;
  }
  if (f.files.size() != 2) throw UsageError("expected PROGRAM HOST (see --help)");
  inv.command = CliInvocation::Command::kRun;
  inv.path = f.files[0];
  inv.host = f.files[1];
  return inv;
}

namespace {

int validate_file(SourceKind kind, const std::string& path, std::ostream& out, std::ostream& err) {
  std::string text = read_text_file(path);
  try {
    validate(kind, text);
  } catch (const SourceError& e) {
    err << path << ": " << e.what() << '\n';
    return 1;
  }
  out << path << ": valid\n";
  return 0;
}

int run(const CliInvocation& inv, std::ostream& out, std::ostream& err, bool* fast_exit) {
  std::string program = read_text_file(inv.path);
  std::string host = read_text_file(inv.host);
  Outcome o = run_program(program, host, inv.config);
  if (inv.config.fast_shutdown) {
    if (fast_exit != nullptr) *fast_exit = true;
    (void)o.graph.release();
  }
  switch (o.kind) {
    case Outcome::Kind::kSuccess:
      out << o.output << '\n';
      if (!inv.output_dir.empty()) {
        std::filesystem::path p = std::filesystem::path(inv.output_dir) / "gp2.output";
        std::ofstream f(p, std::ios::binary);
        if (!f) {
          err << "cannot write " << p.string() << '\n';
          return 2;
        }
        f << o.output << '\n';
      }
      return 0;
    case Outcome::Kind::kFail:
      err << "program failed\n";
      return 2;
    case Outcome::Kind::kProgramError:
      err << "program error: " << o.diagnostic << '\n';
      return 2;
    case Outcome::Kind::kValidationError:
      err << inv.path << ": " << o.diagnostic << '\n';
      return 1;
  }
  return 2;
}

BenchProgram load_bench_program(const std::string& name, const std::filesystem::path& base) {
  if (const CorpusEntry* e = find_entry(name)) {
    return {e->id, read_text_file(program_path(*e))};
  }
  std::filesystem::path p = name;
  if (p.is_relative()) p = base / p;
  return {p.stem().string(), read_text_file(p)};
}

int bench(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  BenchConfig cfg;
  try {
    cfg = parse_bench_config(read_text_file(inv.path));
  } catch (const std::invalid_argument& e) {
    err << inv.path << ": " << e.what() << '\n';
    return 1;
  }
  int reps = cfg.reps > 0 ? cfg.reps : default_reps();
  std::filesystem::path base = std::filesystem::path(inv.path).parent_path();
  std::vector<BenchSample> samples;
  for (const std::string& name : cfg.programs) {
    BenchProgram prog;
    try {
      prog = load_bench_program(name, base);
    } catch (const std::runtime_error& e) {
      err << e.what() << '\n';
      return 1;
    }
    for (RootMode mode : cfg.modes) {
      std::vector<Outcome::Kind> outcomes;
      std::vector<BenchSample> got;
      try {
        got = run_bench(prog, cfg.hosts, cfg.backends, reps, mode, &outcomes);
      } catch (const SourceError& e) {
        err << prog.id << ": " << e.what() << '\n';
        return 1;
      }
      for (std::size_t i = 0; i < got.size(); ++i) {
        err << prog.id << ' ' << got[i].spec.text() << ' ' << backend_name(got[i].backend) << ' '
            << root_mode_name(mode) << ": " << outcome_name(outcomes[i]) << ", median "
            << got[i].median_ms << " ms\n";
        samples.push_back(std::move(got[i]));
      }
    }
  }
  std::string csv = emit_csv(samples);
  std::ostream* report = &err;
  if (cfg.csv.empty()) {
    out << csv;
  } else {
    std::filesystem::path p = cfg.csv;
    if (p.is_relative()) p = base / p;
    std::ofstream f(p, std::ios::binary);
    if (!f) {
      err << "cannot write " << p.string() << '\n';
      return 1;
    }
    f << csv;
    report = &out;
  }
  try {
    for (const RatioEntry& r : ratio_report(samples)) {
      *report << r.group << ' ' << r.size_from << " -> " << r.size_to << ": ratio " << r.ratio << ' '
              << growth_name(r.growth) << '\n';
    }
  } catch (const std::invalid_argument& e) {
    *report << "no ratio report: " << e.what() << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool* fast_exit) {
  if (fast_exit != nullptr) *fast_exit = false;
  CliInvocation inv;
  try {
    inv = parse_args(args);
  } catch (const UsageError& e) {
    err << "gp2: " << e.what() << '\n';
    return 1;
  }
  try {
    switch (inv.command) {
      case CliInvocation::Command::kHelp:
        out << inv.help;
        return 0;
      case CliInvocation::Command::kValidateProgram:
        return validate_file(SourceKind::kProgram, inv.path, out, err);
      case CliInvocation::Command::kValidateRule:
        return validate_file(SourceKind::kRule, inv.path, out, err);
      case CliInvocation::Command::kValidateGraph:
        return validate_file(SourceKind::kGraph, inv.path, out, err);
      case CliInvocation::Command::kRun:
        return run(inv, out, err, fast_exit);
      case CliInvocation::Command::kBench:
        return bench(inv, out, err);
    }
  } catch (const std::runtime_error& e) {
    err << "gp2: " << e.what() << '\n';
    return 1;
  } catch (const std::length_error& e) {
    err << "gp2: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace gp2
