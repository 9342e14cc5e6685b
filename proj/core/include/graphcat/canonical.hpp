#pragma once

#include <string>

#include "graphcat/graph.hpp"

namespace graphcat {

// Isomorphism invariant that separates non-isomorphic graphs: the least edge
// list over vertex orderings that respect valence, with free ends coded as the
// vertex count.
std::string canonical_code(const Graph& g);

// The graph relabelled along the minimising ordering: vertices v0.., arcs
// a0.. in edge-list order.
Graph canonical_form(const Graph& g);

bool isomorphic(const Graph& a, const Graph& b);

}  // namespace graphcat
