#pragma once

#include <optional>
#include <vector>

#include "graphcat/embeddings.hpp"

namespace graphcat {

// A map given by an involutive arc function and a function between the
// embedding posets (indices into emb_poset of each graph).
struct NewGraphMap {
  Graph source;
  Graph target;
  std::vector<int> arcs;
  std::vector<int> classes;

  bool operator==(const NewGraphMap& o) const {
    return source == o.source && target == o.target && arcs == o.arcs && classes == o.classes;
  }
  bool operator<(const NewGraphMap& o) const {
    return arcs != o.arcs ? arcs < o.arcs : classes < o.classes;
  }
};

// A map given by an involutive arc function and, for each source vertex, an
// embedding class of the target.
struct ClassicalMap {
  Graph source;
  Graph target;
  std::vector<int> arcs;
  std::vector<int> vertices;

  bool operator==(const ClassicalMap& o) const {
    return source == o.source && target == o.target && arcs == o.arcs && vertices == o.vertices;
  }
  bool operator<(const ClassicalMap& o) const {
    return arcs != o.arcs ? arcs < o.arcs : vertices < o.vertices;
  }
};

// Objects must validate in the mode and be connected; plain mode rejects
// nodeless loops.
Status check_object(const Graph& g, Mode mode);
Status check_new_map(const NewGraphMap& m, Mode mode);
Status check_classical(const ClassicalMap& m, Mode mode);

NewGraphMap identity_map(const Graph& g);
// second after first. Throws GraphError when the middle graphs differ.
NewGraphMap compose(const NewGraphMap& second, const NewGraphMap& first);
ClassicalMap compose(const ClassicalMap& second, const ClassicalMap& first, Mode mode);

// Reads off each vertex's image as the image of its star.
ClassicalMap to_classical(const NewGraphMap& m);
// Fills in the table by substituting the vertex images into each class's
// representative and taking the class of the resulting embedding.
NewGraphMap from_classical(const ClassicalMap& m, Mode mode);
// The map attached to an embedding (vertex stars go to vertex stars).
NewGraphMap from_embedding(const GraphHom& f);

struct MapKind {
  bool active = false;
  bool inert = false;
};
MapKind classify(const NewGraphMap& m);

// Graph substitution. For each vertex v of g a piece graph together with a
// bijection from the darts at v to the piece's boundary, where dart d is sent
// to the boundary arc standing for the arc opposite d.
struct Piece {
  Graph graph;
  std::vector<std::pair<int, int>> match;  // (dart of g at v, boundary arc of piece)
};

struct Substitution {
  Graph result;
  // For each arc of g, the arc of the result that plays its part.
  std::vector<int> arc_of;
  // Embedding of each piece into the result.
  std::vector<GraphHom> pieces;
};

class SubstitutionError : public GraphError {
 public:
  using GraphError::GraphError;
};

Substitution substitute(const Graph& g, const std::vector<Piece>& pieces, Mode mode);

// Piece for vertex v of m's source: the representative of its image class,
// matched through the arc function.
std::vector<Piece> pieces_of(const ClassicalMap& m);

struct Factorization {
  NewGraphMap active;
  NewGraphMap inert;
  Graph middle;
};
Factorization factor(const NewGraphMap& m, Mode mode);
// Always builds the middle object by substitution, even for active maps.
Factorization factor_by_substitution(const NewGraphMap& m, Mode mode);

// Complement of an embedding class: collapses its image to a single vertex.
struct Complement {
  Graph graph;
  int collapsed_vertex;
  NewGraphMap active;  // from graph to the original target
};
Complement complement(const Graph& h, int emb_class, Mode mode);

struct EnumerationCaps {
  int max_vertices = 3;
  int max_arcs = 8;
};

// All maps source -> target, sorted. Throws CapExceeded past the caps.
std::vector<ClassicalMap> enumerate_classical_maps(const Graph& source, const Graph& target, Mode mode,
                                                   EnumerationCaps caps = {});
std::vector<NewGraphMap> enumerate_maps(const Graph& source, const Graph& target, Mode mode,
                                        EnumerationCaps caps = {});
// Independent route: searches tables satisfying the axioms directly.
std::vector<NewGraphMap> enumerate_maps_by_tables(const Graph& source, const Graph& target, Mode mode,
                                                  EnumerationCaps caps = {});

// Key-based shortcut for the table: vertices are the union of the vertex
// images and the boundary is the arc image of the boundary.
std::optional<NewGraphMap> from_classical_by_keys(const ClassicalMap& m);

}  // namespace graphcat
