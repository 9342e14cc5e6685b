#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "graphcat/graph.hpp"

namespace graphcat {

// A natural transformation of graphs: arc and vertex functions commuting with
// the involution, dart inclusion and attachment.
struct GraphHom {
  Graph source;
  Graph target;
  std::vector<int> arcs;
  std::vector<int> vertices;

  bool operator==(const GraphHom& o) const {
    return source == o.source && target == o.target && arcs == o.arcs && vertices == o.vertices;
  }
};

GraphHom identity_hom(const Graph& g);
GraphHom compose(const GraphHom& second, const GraphHom& first);

// Natural and bijective on every neighbourhood.
Status check_etale(const GraphHom& f);
// Etale, injective on vertices, between connected graphs. Maps touching a
// nodeless loop follow the extended rules.
Status check_embedding(const GraphHom& f);

// Isomorphism class of an embedding over its target, keyed by the image of
// the vertices and the image of the source boundary.
struct EmbClass {
  std::vector<int> vertices;
  std::vector<int> boundary;

  bool is_edge() const { return vertices.empty() && !boundary.empty(); }
  auto operator<=>(const EmbClass&) const = default;
};

EmbClass class_of(const GraphHom& embedding);

struct ClassInfo {
  EmbClass key;
  // Internal edges of the target whose ends both lie in the vertex image but
  // which are not internal edges of the source.
  std::vector<int> cut_edges;
  // Edges of the target met by the image.
  std::vector<int> edges;
};

// All classes of a connected graph, without the order.
std::vector<ClassInfo> enumerate_embeddings(const Graph& g);

// Cut-graph representative of a class, with its embedding into g.
GraphHom representative(const Graph& g, const ClassInfo& c);

// Emb(g) with its partial order and union table. Class indices are stable:
// classes are sorted by (vertex count, vertices, boundary).
class EmbPoset {
 public:
  explicit EmbPoset(const Graph& g);

  const Graph& graph() const { return graph_; }
  int size() const { return static_cast<int>(classes_.size()); }
  const ClassInfo& info(int i) const { return classes_[i]; }
  const EmbClass& key(int i) const { return classes_[i].key; }
  bool is_edge(int i) const { return classes_[i].key.is_edge(); }
  std::optional<int> find(const EmbClass& key) const;
  int index_of(const EmbClass& key) const;  // throws GraphError

  bool leq(int h, int k) const { return leq_[h * size() + k] != 0; }
  int top() const { return top_; }
  int vertex_star(int v) const { return stars_[v]; }
  int edge_class(int e) const { return edge_classes_[e]; }
  bool is_vertex_star(int i) const;

  bool is_union(int l, int h, int k) const;
  const std::vector<int>& unions(int h, int k) const { return unions_[h * size() + k]; }
  bool vertex_disjoint(int h, int k) const;
  // All (l, h, k) with h <= k as indices and l a union of h and k.
  const std::vector<std::array<int, 3>>& union_triples() const { return triples_; }

  GraphHom representative(int i) const;
  const std::vector<int>& classes_with_boundary(const std::vector<int>& boundary) const;

 private:
  Graph graph_;
  std::vector<ClassInfo> classes_;
  std::map<EmbClass, int> index_;
  std::map<std::vector<int>, std::vector<int>> by_boundary_;
  std::vector<char> leq_;
  int top_ = -1;
  std::vector<int> stars_;
  std::vector<int> edge_classes_;
  std::vector<std::vector<int>> unions_;
  std::vector<std::array<int, 3>> triples_;
};

// Cached on the graph. Throws GraphError when g is not connected.
const EmbPoset& emb_poset(const Graph& g);

// Decides h <= k by rebuilding k's representative and pushing its own
// classes forward.
bool leq(const Graph& g, const EmbClass& h, const EmbClass& k);

// Pullback over the target followed by pushout of the two sources. Returns
// nothing when the pullback is empty.
std::optional<GraphHom> pullback_pushout_union(const GraphHom& h, const GraphHom& k);

// For a class whose representative has an internal edge or several vertices,
// splits it as a union of a vertex star and a smaller class.
struct DeletableSplit {
  int star;
  int rest;
};
std::optional<DeletableSplit> deletable_vertex_split(const EmbPoset& p, int l);

}  // namespace graphcat
