// Host generators, the timing harness, growth-ratio analysis and CSV.
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gp2/engine.hpp"
#include "gp2/graph.hpp"

namespace gp2 {

struct GeneratorSpec {
  // kSeed is a single root labelled n, the input of the generation programs.
  enum class Kind : std::uint8_t {
    kDiscrete, kFullBinaryTree, kGrid, kLinkedList, kStar, kSierpinski, kSeed,
  };
  Kind kind = Kind::kDiscrete;
  std::vector<std::uint64_t> params;

  // "grid(3,4)"
  std::string text() const;
  // Size used when grouping samples into doubling series.
  std::uint64_t nominal_size() const;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

std::string_view generator_name(GeneratorSpec::Kind k);
// Throws std::invalid_argument.
GeneratorSpec parse_generator_spec(std::string_view text);

inline constexpr std::uint64_t kDefaultMaxNodes = std::uint64_t{1} << 26;

// Closed forms. Throw std::length_error above max_nodes.
std::uint64_t expected_nodes(const GeneratorSpec& spec, std::uint64_t max_nodes = kDefaultMaxNodes);
std::uint64_t expected_edges(const GeneratorSpec& spec);

// All labels empty except seed(n). Throws std::length_error above max_nodes.
std::unique_ptr<Graph> generate(const GeneratorSpec& spec, GraphOptions opts = {},
                                std::uint64_t max_nodes = kDefaultMaxNodes);

std::string_view backend_name(IterationBackend b);
std::string_view root_mode_name(RootMode m);

struct BenchSample {
  std::string program;
  GeneratorSpec spec;
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  IterationBackend backend = IterationBackend::kChain;
  RootMode mode = RootMode::kPreserve;
  int reps = 0;
  double median_ms = 0;
  std::vector<double> all_ms;

  friend bool operator==(const BenchSample&, const BenchSample&) = default;
};

struct BenchProgram {
  std::string id;
  std::string text;
};

// GP2_BENCH_REPS, else 3.
int default_reps();

// Times execution only: the host is regenerated before every repetition and
// nothing is printed. Repetitions cycle through all samples. outcomes, if
// given, receives one entry per sample.
std::vector<BenchSample> run_bench(const BenchProgram& program,
                                   std::span<const GeneratorSpec> specs,
                                   std::span<const IterationBackend> backends, int reps,
                                   RootMode mode = RootMode::kPreserve,
                                   std::vector<Outcome::Kind>* outcomes = nullptr);

double median(std::vector<double> values);

enum class Growth : std::uint8_t { kLinear, kQuadratic, kOther };
std::string_view growth_name(Growth g);
// linear: [1.4, 2.6]; quadratic: [3.2, 5.0].
Growth classify_ratio(double r);

struct SizeTime {
  double size = 0;
  double ms = 0;
};

struct RatioEntry {
  std::string group;
  double size_from = 0;
  double size_to = 0;
  double ratio = 0;
  Growth growth = Growth::kOther;
};

// Consecutive points must roughly double in size. Throws std::invalid_argument.
std::vector<RatioEntry> ratio_report(std::span<const SizeTime> series, std::string group = {});
// Groups by program, generator kind, backend and mode; sizes are nominal (seed(n) counts as n).
std::vector<RatioEntry> ratio_report(std::span<const BenchSample> samples);

std::string emit_csv(std::span<const BenchSample> samples);
// Throws std::invalid_argument.
std::vector<BenchSample> parse_csv(std::string_view text);

// Key-value harness configuration:
//   programs = is-discrete, path/to/other.gp2
//   hosts = discrete(1000); discrete(2000)
//   backends = chain, index_scan
//   modes = preserve
//   reps = 3
//   csv = out.csv
struct BenchConfig {
  std::vector<std::string> programs;
  std::vector<GeneratorSpec> hosts;
  std::vector<IterationBackend> backends{IterationBackend::kChain};
  std::vector<RootMode> modes{RootMode::kPreserve};
  int reps = 0;  // 0: default_reps()
  std::string csv;
};

// Throws std::invalid_argument with the offending line.
BenchConfig parse_bench_config(std::string_view text);

}  // namespace gp2
