#include "gp2/engine.hpp"

#include <map>

#include "gp2/textio.hpp"

namespace gp2 {

void apply_rule(const Rule& rule, const Match& m, ChangeStack& journal) {
  const PatternGraph& L = rule.lhs;
  const PatternGraph& R = rule.rhs;
  InstantiatedRhs inst = instantiate_rhs(rule, m.assignment, m.view(), m.edges);

  for (std::size_t i = 0; i < L.edges.size(); ++i) {
    if (rule.lhs_edge_to_rhs[i] < 0) journal.delete_edge(m.edges[i]);
  }
  for (std::size_t i = 0; i < L.nodes.size(); ++i) {
    if (rule.deletes_node(static_cast<int>(i))) journal.delete_node(m.nodes[i]);
  }

  std::vector<Node*> image(R.nodes.size(), nullptr);
  for (std::size_t j = 0; j < R.nodes.size(); ++j) {
    int l = rule.rhs_node_to_lhs[j];
    if (l < 0) continue;
    Node* h = m.nodes[l];
    image[j] = h;
    journal.relabel_node(h, inst.node_labels[j]);
    journal.remark_node(h, inst.node_marks[j]);
    if (L.nodes[l].root != R.nodes[j].root) journal.set_root(h, R.nodes[j].root);
  }
  for (std::size_t j = 0; j < R.edges.size(); ++j) {
    int l = rule.rhs_edge_to_lhs[j];
    if (l < 0) continue;
    journal.relabel_edge(m.edges[l], inst.edge_labels[j]);
    journal.remark_edge(m.edges[l], inst.edge_marks[j]);
  }
  for (std::size_t j = 0; j < R.nodes.size(); ++j) {
    if (image[j] != nullptr) continue;
    image[j] = journal.add_node(inst.node_labels[j], inst.node_marks[j], R.nodes[j].root);
  }
  for (std::size_t j = 0; j < R.edges.size(); ++j) {
    if (rule.rhs_edge_to_lhs[j] >= 0) continue;
    const PatternEdge& e = R.edges[j];
    journal.add_edge(image[e.source], image[e.target], inst.edge_labels[j], inst.edge_marks[j]);
  }
}

void ExecConfig::validate() const {
  if (minimal_gc && !fast_shutdown) {
    throw std::invalid_argument("minimal GC requires fast shutdown");
  }
}

namespace {

Command expand(const Command& c, const Program& p, const std::map<std::string, int, std::less<>>& procs) {
  if (c.kind == Command::Kind::kCall) {
    auto it = procs.find(c.name);
    if (it == procs.end()) {
      throw SourceError(SourceError::Kind::kSemantic, c.line, c.column, "unknown procedure " + c.name);
    }
    return expand(p.procedures[it->second].body, p, procs);
  }
  Command out = c;
  for (Command& b : out.body) b = expand(b, p, procs);
  return out;
}

}  // namespace

Command inline_procedures(const Program& program) {
  std::map<std::string, int, std::less<>> procs;
  for (std::size_t i = 0; i < program.procedures.size(); ++i) {
    procs.emplace(program.procedures[i].name, static_cast<int>(i));
  }
  Command main = expand(program.main, program, procs);
  annotate(main);
  return main;
}

void annotate(Command& c) {
  for (Command& b : c.body) annotate(b);
  using K = Command::Kind;
  switch (c.kind) {
    case K::kRuleSet:
    case K::kFail:
    case K::kCall:
      c.may_fail = true;
      break;
    case K::kSeq:
      c.may_fail = false;
      for (const Command& b : c.body) c.may_fail = c.may_fail || b.may_fail;
      break;
    case K::kIf:
    case K::kTry:
      c.may_fail = c.body[1].may_fail || c.body[2].may_fail;
      break;
    case K::kLoop:
    case K::kBreak:
    case K::kSkip:
      c.may_fail = false;
      break;
  }
}

Executor::Executor(const Program& program, Graph& g, ExecConfig cfg)
    : program_(program), g_(g), cfg_(cfg), stack_(g) {
  opts_.backend = cfg.iteration_backend;
  opts_.root_mode = cfg.root_mode;
  matchers_.reserve(program.rules.size());
  for (const Rule& r : program.rules) matchers_.emplace_back(r, cfg.optimize_plans);
}

bool Executor::apply_rule_set(const Command& c) {
  for (int idx : c.rules) {
    Matcher& m = matchers_[idx];
    try {
      if (!m.find(g_, opts_)) continue;
      apply_rule(m.rule(), m.match(), stack_);
    } catch (const EvalError& e) {
      throw ProgramError(e.what());
    }
    ++applications_;
    return true;
  }
  return false;
}

bool Executor::any_match(const Command& c) {
  for (int idx : c.rules) {
    try {
      if (matchers_[idx].find(g_, opts_)) return true;
    } catch (const EvalError& e) {
      throw ProgramError(e.what());
    }
  }
  return false;
}

ExecStatus Executor::exec_loop(const Command& c) {
  const Command& body = c.body[0];
  bool framed = body.may_fail && body.kind != Command::Kind::kRuleSet;
  for (;;) {
    if (framed) stack_.open_frame();
    ExecStatus st = exec(body);
    if (st == ExecStatus::kFailed) {
      if (framed) stack_.undo_frame();
      return ExecStatus::kSucceeded;
    }
    if (framed) stack_.commit_frame();
    if (st == ExecStatus::kBroke) return ExecStatus::kSucceeded;
  }
}

ExecStatus Executor::exec(const Command& c) {
  using K = Command::Kind;
  switch (c.kind) {
    case K::kRuleSet:
      return apply_rule_set(c) ? ExecStatus::kSucceeded : ExecStatus::kFailed;
    case K::kSeq:
      for (const Command& b : c.body) {
        ExecStatus st = exec(b);
        if (st != ExecStatus::kSucceeded) return st;
      }
      return ExecStatus::kSucceeded;
    case K::kIf: {
      const Command& guard = c.body[0];
      bool ok;
      if (guard.kind == K::kRuleSet) {
        ok = any_match(guard);
      } else {
        stack_.open_frame();
        ok = exec(guard) == ExecStatus::kSucceeded;
        stack_.undo_frame();
      }
      return exec(ok ? c.body[1] : c.body[2]);
    }
    case K::kTry: {
      const Command& guard = c.body[0];
      bool ok;
      if (guard.kind == K::kRuleSet) {
        ok = apply_rule_set(guard);
      } else if (!guard.may_fail) {
        exec(guard);
        ok = true;
      } else {
        stack_.open_frame();
        ok = exec(guard) == ExecStatus::kSucceeded;
        if (ok) {
          stack_.commit_frame();
        } else {
          stack_.undo_frame();
        }
      }
      return exec(ok ? c.body[1] : c.body[2]);
    }
    case K::kLoop:
      return exec_loop(c);
    case K::kBreak:
      return ExecStatus::kBroke;
    case K::kSkip:
      return ExecStatus::kSucceeded;
    case K::kFail:
      return ExecStatus::kFailed;
    case K::kCall:
      break;
  }
  throw ContractViolation("procedure call reached the executor: " + c.name);
}

std::string_view outcome_name(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::kSuccess: return "success";
    case Outcome::Kind::kFail: return "fail";
    case Outcome::Kind::kProgramError: return "program-error";
    case Outcome::Kind::kValidationError: return "validation-error";
  }
  return "?";
}

ExecStatus run_on(const Program& program, const Command& main, Graph& g, const ExecConfig& cfg) {
  Executor ex(program, g, cfg);
  return ex.exec(main);
}

Outcome run_program(std::string_view program_text, std::string_view host_text,
                    const ExecConfig& cfg) {
  Outcome out;
  Program program;
  Command main;
  try {
    cfg.validate();
    program = parse_program(program_text);
    main = inline_procedures(program);
  } catch (const SourceError& e) {
    out.kind = Outcome::Kind::kValidationError;
    out.diagnostic = e.what();
    return out;
  } catch (const std::invalid_argument& e) {
    out.kind = Outcome::Kind::kValidationError;
    out.diagnostic = e.what();
    return out;
  }
  HostGraph host;
  try {
    host = parse_host_graph(host_text, GraphOptions{cfg.minimal_gc});
  } catch (const SourceError& e) {
    out.kind = Outcome::Kind::kProgramError;
    out.diagnostic = std::string("host graph: ") + e.what();
    return out;
  }
  try {
    ExecStatus st = run_on(program, main, *host.graph, cfg);
    if (st == ExecStatus::kFailed) {
      out.kind = Outcome::Kind::kFail;
    } else {
      out.kind = Outcome::Kind::kSuccess;
      out.output = print_graph(*host.graph);
    }
  } catch (const ProgramError& e) {
    out.kind = Outcome::Kind::kProgramError;
    out.diagnostic = e.what();
  }
  out.graph = std::move(host.graph);
  return out;
}

}  // namespace gp2
