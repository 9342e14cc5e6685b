#pragma once

#include <string>
#include <vector>

#include "graphcat/graph.hpp"

namespace graphcat {

struct NamedGraph {
  std::string name;
  Graph graph;
  bool extended_only = false;
};

// Small connected graphs (at most 3 vertices, at most 4 edges) used by the
// exhaustive checks. The nodeless loop is flagged extended_only.
std::vector<NamedGraph> standard_corpus();

// The trees of the standard corpus plus two small two-vertex trees, one with a
// leafless vertex.
std::vector<NamedGraph> tree_corpus();

// Two vertices v, w, each with one free end, joined by parallel edges e1 and
// e2. The stars at v and w have three unions and no least one.
Graph no_joins_graph();

// Two vertices v, w joined by parallel edges e0 and e1 (no free ends), and
// the graph with e0 snipped into two free ends, which embeds by regluing them.
Graph counterexample_target();
Graph counterexample_source();

// Directed shape with top vertex t (valence 3), middle m (valence 4) and
// bottom b (valence 3); every edge points down. The subgraph on t and b is
// not convex because e0 -> m -> e1 leaves it.
Graph not_structured_graph();

}  // namespace graphcat
