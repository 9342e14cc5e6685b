#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphcat/status.hpp"

namespace graphcat {

// Plain graphs have boundary = arcs minus darts. Extended graphs carry an
// explicit boundary, which admits the nodeless loop.
enum class Mode { plain, extended };

class EmbPoset;

namespace detail {
struct GraphData;
struct EmbCache {
  std::once_flag once;
  std::shared_ptr<const EmbPoset> poset;
};
}  // namespace detail

// Name-level description of a graph, as read from a file.
struct GraphSpec {
  std::vector<std::string> arcs;
  std::vector<std::pair<std::string, std::string>> involution;
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::vector<std::string>>> nbhd;
  std::optional<std::vector<std::string>> boundary;
};

// An orbit of the involution. first < second as arc indices.
struct Edge {
  int first;
  int second;
};

// Immutable Feynman graph. Arcs and vertices are indexed in lexicographic
// order of their names. Copies share storage.
class Graph {
 public:
  Graph();
  // Throws GraphError when the spec refers to unknown names or lists a name
  // twice. Semantic invariants are left to validate().
  explicit Graph(const GraphSpec& spec);

  int num_arcs() const;
  int num_vertices() const;
  int num_edges() const;

  const std::string& arc_name(int a) const;
  const std::string& vertex_name(int v) const;
  int arc(const std::string& name) const;     // throws GraphError
  int vertex(const std::string& name) const;  // throws GraphError
  std::optional<int> find_arc(const std::string& name) const;
  std::optional<int> find_vertex(const std::string& name) const;

  // Partner under the involution, -1 when unspecified.
  int dagger(int a) const;
  bool is_dart(int a) const;
  // Vertex a dart is attached to, -1 for non-darts.
  int attach(int a) const;
  const std::vector<int>& nbhd(int v) const;
  bool in_boundary(int a) const;
  std::vector<int> boundary() const;
  std::vector<int> darts() const;
  bool boundary_explicit() const;

  // Edges are only meaningful once the involution validates.
  const std::vector<Edge>& edges() const;
  int edge_of(int a) const;
  bool is_internal_edge(int e) const;

  GraphSpec spec() const;

  bool operator==(const Graph& other) const;
  bool operator!=(const Graph& other) const { return !(*this == other); }
  bool same_object(const Graph& other) const { return data_ == other.data_; }

  const std::vector<std::string>& construction_issues() const;
  detail::EmbCache& emb_cache() const;

 private:
  std::shared_ptr<detail::GraphData> data_;
};

Status validate(const Graph& g, Mode mode);

// Non-empty and connected as a space built from vertices and edges.
bool is_connected(const Graph& g);
// Connected with no cycle of vertices and edges. The nodeless loop is a
// circle, so it is not a tree.
bool is_tree(const Graph& g);
bool is_nodeless_loop(const Graph& g);
bool is_edge_graph(const Graph& g);
// One vertex and every dart pairs with a non-dart.
bool is_star(const Graph& g);

// Standard shapes.
Graph star(int n);          // vertex v, darts 1..n, boundary 1†..n†
Graph edge_graph();         // arcs ♯ and ♭
Graph nodeless_loop();      // arcs a and a†, no vertices, empty boundary
Graph line_graph(int n);    // n vertices in a chain with a free end at each extreme
Graph loop_with_one_vertex();
Graph cycle_graph(int n);   // n two-valent vertices in a closed ring, no boundary

// Builder for ad hoc graphs: edges are given by their two ends, where an end
// is either a vertex name or empty for a free end.
class GraphBuilder {
 public:
  GraphBuilder& vertex(const std::string& v);
  // Adds an edge whose arcs are named a and b. a is attached at va, b at vb.
  GraphBuilder& edge(const std::string& a, const std::string& va, const std::string& b,
                     const std::string& vb);
  Graph build() const;
  GraphSpec spec() const;

 private:
  GraphSpec spec_;
  std::unordered_map<std::string, std::size_t> nbhd_index_;
};

}  // namespace graphcat
