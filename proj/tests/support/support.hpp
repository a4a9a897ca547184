// Random hosts, plain adjacency models and graph-theoretic oracles shared by
// the unit suites and the acceptance binary.
#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gp2/graph.hpp"

namespace gp2::testkit {

using Rng = std::mt19937_64;

// Nodes 0..n-1, edges in insertion order. Parallel edges and loops allowed.
struct Digraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

struct HostStyle {
  bool labels = false;  // random short lists instead of empty labels
  bool marks = false;
  bool roots = false;
};

std::unique_ptr<Graph> build(const Digraph& d, Rng* rng = nullptr, HostStyle style = {});
// Node numbering follows g.nodes().
Digraph shape_of(const Graph& g);
std::unique_ptr<Graph> copy_graph(const Graph& g);

HostList random_label(Rng& rng);

// Up to max_nodes nodes, loops and parallel edges included.
Digraph random_digraph(Rng& rng, int max_nodes, int max_edges);
Digraph random_dag(Rng& rng, int max_nodes, int max_out);
Digraph random_arborescence(Rng& rng, int max_nodes);
// Built by series and parallel composition from single edges.
Digraph random_series_parallel(Rng& rng, int max_edges);
// Small random edit: add, drop or reverse an edge, or add a node.
Digraph perturb(Rng& rng, Digraph d);
Digraph shuffled(Rng& rng, const Digraph& d);

// Any host with every label, mark and root drawn at random.
std::unique_ptr<Graph> random_host(Rng& rng, int max_nodes, int max_edges);

bool oracle_discrete(const Digraph& d);
bool oracle_acyclic(const Digraph& d);
bool oracle_bin_dag(const Digraph& d);  // acyclic, out-degree <= 2
bool oracle_weakly_connected(const Digraph& d);  // union-find; empty graph counts
bool oracle_arborescence(const Digraph& d);
bool oracle_series_parallel(const Digraph& d);  // two-terminal, directed
// For the nodes reachable by a path of length >= 1: the closure edges that are missing.
std::vector<std::pair<int, int>> missing_closure_edges(const Digraph& d);

// Reference closure: copy of g plus one unmarked empty edge per missing pair.
std::unique_ptr<Graph> closure_of(const Graph& g);

}  // namespace gp2::testkit
