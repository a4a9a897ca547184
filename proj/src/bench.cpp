#include <algorithm>
#include <charconv>
#include <chrono>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "gp2/bench.hpp"
#include "gp2/textio.hpp"

namespace gp2 {

std::string_view backend_name(IterationBackend b) {
  return b == IterationBackend::kChain ? "chain" : "index_scan";
}

std::string_view root_mode_name(RootMode m) {
  return m == RootMode::kPreserve ? "preserve" : "reflect";
}

int default_reps() {
  const char* env = std::getenv("GP2_BENCH_REPS");
  if (env == nullptr || *env == '\0') return 3;
  int v = 0;
  std::string_view s(env);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 1) return 3;
  return v;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of no values");
  std::sort(values.begin(), values.end());
  std::size_t m = values.size() / 2;
  if (values.size() % 2 == 1) return values[m];
  return (values[m - 1] + values[m]) / 2;
}

std::vector<BenchSample> run_bench(const BenchProgram& program,
                                   std::span<const GeneratorSpec> specs,
                                   std::span<const IterationBackend> backends, int reps,
                                   RootMode mode, std::vector<Outcome::Kind>* outcomes) {
  if (reps < 1) throw std::invalid_argument("reps must be at least 1");
  Program p = parse_program(program.text);
  Command main = inline_procedures(p);
  std::vector<BenchSample> out;
  for (const GeneratorSpec& spec : specs) {
    for (IterationBackend backend : backends) {
      BenchSample s;
      s.program = program.id;
      s.spec = spec;
      s.backend = backend;
      s.mode = mode;
      s.reps = reps;
      out.push_back(std::move(s));
    }
  }
  // Reps go round the samples so a slow spell on the machine lands on all sizes alike.
  std::vector<Outcome::Kind> kinds(out.size(), Outcome::Kind::kSuccess);
  for (int r = 0; r < reps; ++r) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      BenchSample& s = out[i];
      ExecConfig cfg;
      cfg.iteration_backend = s.backend;
      cfg.root_mode = mode;
      std::unique_ptr<Graph> g = generate(s.spec);
      s.nodes = g->node_count();
      s.edges = g->edge_count();
      auto t0 = std::chrono::steady_clock::now();
      try {
        ExecStatus st = run_on(p, main, *g, cfg);
        kinds[i] = st == ExecStatus::kFailed ? Outcome::Kind::kFail : Outcome::Kind::kSuccess;
      } catch (const ProgramError&) {
        kinds[i] = Outcome::Kind::kProgramError;
      }
      auto t1 = std::chrono::steady_clock::now();
      s.all_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
  }
  for (BenchSample& s : out) s.median_ms = median(s.all_ms);
  if (outcomes != nullptr) outcomes->insert(outcomes->end(), kinds.begin(), kinds.end());
  return out;
}

std::string_view growth_name(Growth g) {
  switch (g) {
    case Growth::kLinear: return "~linear";
    case Growth::kQuadratic: return "~quadratic";
    case Growth::kOther: return "other";
  }
  return "other";
}

Growth classify_ratio(double r) {
  if (r >= 1.4 && r <= 2.6) return Growth::kLinear;
  if (r >= 3.2 && r <= 5.0) return Growth::kQuadratic;
  return Growth::kOther;
}

std::vector<RatioEntry> ratio_report(std::span<const SizeTime> series, std::string group) {
  if (series.size() < 2) throw std::invalid_argument("ratio report needs at least two sizes");
  std::vector<RatioEntry> out;
  for (std::size_t i = 1; i < series.size(); ++i) {
    const SizeTime& a = series[i - 1];
    const SizeTime& b = series[i];
    double step = b.size / a.size;
    if (!(a.size > 0) || step < 1.9 || step > 2.1) {
      throw std::invalid_argument("sizes " + std::to_string(a.size) + " and " +
                                  std::to_string(b.size) + " are not a doubling");
    }
    if (!(a.ms > 0)) throw std::invalid_argument("non-positive time in ratio report");
    RatioEntry e;
    e.group = group;
    e.size_from = a.size;
    e.size_to = b.size;
    e.ratio = b.ms / a.ms;
    e.growth = classify_ratio(e.ratio);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<RatioEntry> ratio_report(std::span<const BenchSample> samples) {
  std::map<std::string, std::vector<SizeTime>> groups;
  for (const BenchSample& s : samples) {
    std::string key = s.program + "/" + std::string(generator_name(s.spec.kind)) + "/" +
                      std::string(backend_name(s.backend)) + "/" + std::string(root_mode_name(s.mode));
    groups[key].push_back({static_cast<double>(s.spec.nominal_size()), s.median_ms});
  }
  std::vector<RatioEntry> out;
  for (auto& [key, series] : groups) {
    std::sort(series.begin(), series.end(),
              [](const SizeTime& a, const SizeTime& b) { return a.size < b.size; });
    for (RatioEntry& e : ratio_report(series, key)) out.push_back(std::move(e));
  }
  return out;
}

namespace {

constexpr std::string_view kHeader =
    "program,kind,params,nodes,edges,backend,mode,reps,median_ms,all_ms";

std::string fmt_double(double d) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, d);
  (void)ec;
  return std::string(buf, p);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    std::size_t i = s.find(sep);
    out.push_back(s.substr(0, i));
    if (i == std::string_view::npos) break;
    s.remove_prefix(i + 1);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class T>
T number(std::string_view s, std::string_view what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

IterationBackend parse_backend(std::string_view s) {
  if (s == "chain") return IterationBackend::kChain;
  if (s == "index_scan") return IterationBackend::kIndexScan;
  throw std::invalid_argument("unknown backend '" + std::string(s) + "'");
}

RootMode parse_mode(std::string_view s) {
  if (s == "preserve") return RootMode::kPreserve;
  if (s == "reflect") return RootMode::kReflect;
  throw std::invalid_argument("unknown root mode '" + std::string(s) + "'");
}

}  // namespace

std::string emit_csv(std::span<const BenchSample> samples) {
  std::string out(kHeader);
  out += '\n';
  for (const BenchSample& s : samples) {
    if (s.program.find_first_of(",\n") != std::string::npos) {
      throw std::invalid_argument("program id cannot contain ',' or newlines");
    }
    out += s.program;
    out += ',';
    out += generator_name(s.spec.kind);
    out += ',';
    for (std::size_t i = 0; i < s.spec.params.size(); ++i) {
      if (i != 0) out += ';';
      out += std::to_string(s.spec.params[i]);
    }
    out += ',' + std::to_string(s.nodes) + ',' + std::to_string(s.edges) + ',';
    out += backend_name(s.backend);
    out += ',';
    out += root_mode_name(s.mode);
    out += ',' + std::to_string(s.reps) + ',' + fmt_double(s.median_ms) + ',';
    for (std::size_t i = 0; i < s.all_ms.size(); ++i) {
      if (i != 0) out += ';';
      out += fmt_double(s.all_ms[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<BenchSample> parse_csv(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]) != kHeader) throw std::invalid_argument("missing CSV header");
  std::vector<BenchSample> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string_view> f = split(line, ',');
    if (f.size() != 10) throw std::invalid_argument("CSV line " + std::to_string(i + 1) + ": expected 10 fields");
    BenchSample s;
    s.program = std::string(f[0]);
    std::string spec(f[1]);
    spec += '(';
    for (std::string_view p : split(f[2], ';')) {
      if (spec.back() != '(') spec += ',';
      spec += p;
    }
    spec += ')';
    s.spec = parse_generator_spec(spec);
    s.nodes = number<std::uint64_t>(f[3], "node count");
    s.edges = number<std::uint64_t>(f[4], "edge count");
    s.backend = parse_backend(f[5]);
    s.mode = parse_mode(f[6]);
    s.reps = number<int>(f[7], "repetition count");
    s.median_ms = number<double>(f[8], "median");
    if (!f[9].empty()) {
      for (std::string_view t : split(f[9], ';')) s.all_ms.push_back(number<double>(t, "time"));
    }
    out.push_back(std::move(s));
  }
  return out;
}

BenchConfig parse_bench_config(std::string_view text) {
  BenchConfig cfg;
  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + why);
    };
    if (eq == std::string_view::npos) fail("expected key = value");
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    try {
      if (key == "programs") {
        cfg.programs.clear();
        for (std::string_view p : split(value, ',')) {
          if (!trim(p).empty()) cfg.programs.emplace_back(trim(p));
        }
      } else if (key == "hosts") {
        cfg.hosts.clear();
        for (std::string_view h : split(value, ';')) {
          if (!trim(h).empty()) cfg.hosts.push_back(parse_generator_spec(h));
        }
      } else if (key == "backends") {
        cfg.backends.clear();
        for (std::string_view b : split(value, ',')) cfg.backends.push_back(parse_backend(trim(b)));
      } else if (key == "modes") {
        cfg.modes.clear();
        for (std::string_view m : split(value, ',')) cfg.modes.push_back(parse_mode(trim(m)));
      } else if (key == "reps") {
        cfg.reps = number<int>(value, "reps");
        if (cfg.reps < 1) fail("reps must be at least 1");
      } else if (key == "csv") {
        cfg.csv = std::string(value);
      } else {
        fail("unknown key '" + std::string(key) + "'");
      }
    } catch (const std::invalid_argument& e) {
      std::string msg = e.what();
      if (msg.rfind("config line", 0) == 0) throw;
      fail(msg);
    }
  }
  if (cfg.programs.empty()) throw std::invalid_argument("config names no programs");
  if (cfg.hosts.empty()) throw std::invalid_argument("config names no hosts");
  return cfg;
}

}  // namespace gp2
