#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphcat/graphical_maps.hpp"

namespace graphcat {

// A sign per arc with sign[a†] == -sign[a]. Darts with sign +1 are outputs of
// their vertex and darts with -1 inputs; boundary arcs with +1 are inputs of
// the graph and boundary arcs with -1 its outputs.
struct Orientation {
  std::vector<int> sign;

  bool operator==(const Orientation&) const = default;
  auto operator<=>(const Orientation&) const = default;
};

Status check_orientation(const Graph& g, const Orientation& x);

// All 2^|E| orientations, ordered by the signs of the first arc of each edge.
std::vector<Orientation> orientations_of(const Graph& g);
// Orientation with the first arc of each edge signed by first_arc_sign[e].
Orientation orientation_from_edges(const Graph& g, const std::vector<int>& first_arc_sign);
// Sign +1 on the arcs named in `plus`, -1 on their partners.
Orientation orientation_by_names(const Graph& g, const std::vector<std::string>& plus);

// The pulled-back orientation on the source.
Orientation restrict_orientation(const NewGraphMap& m, const Orientation& target);

struct DirectedGraph {
  Graph graph;
  Orientation orientation;
};

std::vector<int> inputs_of_vertex(const DirectedGraph& g, int v);   // darts
std::vector<int> outputs_of_vertex(const DirectedGraph& g, int v);  // darts
std::vector<int> graph_inputs(const DirectedGraph& g);              // boundary arcs
std::vector<int> graph_outputs(const DirectedGraph& g);             // boundary arcs
// Inputs and outputs of an embedding class, as sorted arcs of the graph.
std::vector<int> class_inputs(const DirectedGraph& g, int emb_class);
std::vector<int> class_outputs(const DirectedGraph& g, int emb_class);

// Signs preserved by the arc map, plus the equivalent condition that the
// induced edge map carries class inputs and outputs to image inputs and outputs.
Status check_oriented_map(const NewGraphMap& m, const Orientation& source, const Orientation& target, Mode mode);
std::vector<NewGraphMap> enumerate_oriented_maps(const DirectedGraph& source, const DirectedGraph& target, Mode mode,
                                                 EnumerationCaps caps = {});

bool is_linear(const DirectedGraph& g);
// Connected, not a nodeless loop, and no directed cycle.
bool is_acyclic(const DirectedGraph& g);
// Every embedding class has exactly one output.
bool is_dendroidal(const DirectedGraph& g);

// Injective and closed under directed paths between its edges.
bool is_structured(const DirectedGraph& g, int emb_class);
// Sorted class indices. Throws GraphError unless g is acyclic.
std::vector<int> structured_subgraphs(const DirectedGraph& g);
// The union of two structured subgraphs as vertex and edge sets, when that is
// again a structured subgraph.
std::optional<int> structured_union(const DirectedGraph& g, int h, int k);

// Requires an oriented map between acyclic graphs; fails with
// "image not structured" when the top class lands outside sSb.
Status check_properadic(const NewGraphMap& m, const Orientation& source, const Orientation& target);
bool is_properadic(const NewGraphMap& m, const Orientation& source, const Orientation& target);
// Properadic between trees.
bool is_dioperadic(const NewGraphMap& m, const Orientation& source, const Orientation& target);

struct ProperadicMap {
  std::vector<int> edges;              // edge map
  std::vector<int> structured;         // sSb(source), sorted
  std::vector<int> table;              // image in Emb(target) of each entry of structured
};
// Throws GraphError if the map is not properadic or the restriction breaks
// the in/out or union conditions.
ProperadicMap properadic_restriction(const NewGraphMap& m, const Orientation& source, const Orientation& target);

// The four-set presentation with explicit graph inputs and outputs.
struct FourSetGraph {
  std::vector<std::string> edges;
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> inputs;   // (edge, vertex): edge is an input of the vertex
  std::vector<std::pair<int, int>> outputs;  // (edge, vertex)
  std::vector<int> graph_inputs;             // sorted edges
  std::vector<int> graph_outputs;            // sorted edges

  bool operator==(const FourSetGraph&) const = default;
};

Status check_four_set(const FourSetGraph& k);
// Edges are named after their positive arc.
FourSetGraph to_four_set(const DirectedGraph& g);
// Positive arcs take the edge name, negative arcs the edge name with "-".
DirectedGraph from_four_set(const FourSetGraph& k);
// Edges in no incidence and neither a graph input nor output.
std::vector<int> loop_edges(const FourSetGraph& k);

// A natural transformation with pullback squares at vertices that sends loop
// edges to loop edges.
Status check_p_map(const FourSetGraph& g, const FourSetGraph& h, const std::vector<int>& edges,
                   const std::vector<int>& vertices);

}  // namespace graphcat
