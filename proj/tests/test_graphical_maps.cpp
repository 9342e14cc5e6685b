#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "graphcat/canonical.hpp"
#include "graphcat/corpus.hpp"
#include "graphcat/graphical_maps.hpp"

using namespace graphcat;

namespace {

struct Pair {
  std::string from;
  std::string to;
  Mode mode;
  std::vector<NewGraphMap> maps;
};

// Every ordered corpus pair in each mode it makes sense in.
const std::vector<Pair>& hom_sets() {
  static const std::vector<Pair> all = [] {
    std::vector<Pair> out;
    auto corpus = standard_corpus();
    for (const auto& a : corpus)
      for (const auto& b : corpus)
        for (Mode mode : {Mode::plain, Mode::extended}) {
          if (mode == Mode::plain && (a.extended_only || b.extended_only)) continue;
          out.push_back({a.name, b.name, mode, enumerate_maps(a.graph, b.graph, mode)});
        }
    return out;
  }();
  return all;
}

const Graph& corpus_graph(const std::string& name) {
  static const auto corpus = standard_corpus();
  for (const auto& ng : corpus)
    if (ng.name == name) return ng.graph;
  throw std::runtime_error("no corpus graph " + name);
}

int factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("small hom-set counts") {
  CHECK(enumerate_maps(edge_graph(), edge_graph(), Mode::plain).size() == 2);
  CHECK(enumerate_maps(nodeless_loop(), nodeless_loop(), Mode::extended).size() == 2);
  for (int n = 1; n <= 3; ++n) CHECK(enumerate_maps(cycle_graph(n), nodeless_loop(), Mode::extended).size() == 2);
  CHECK(enumerate_maps(star(0), nodeless_loop(), Mode::extended).size() == 1);
  CHECK(enumerate_maps(star(0), star(0), Mode::plain).size() == 1);
  // Out of the nodeless loop only isomorphisms.
  for (const auto& ng : standard_corpus()) {
    if (ng.extended_only) continue;
    CHECK_MESSAGE(enumerate_maps(nodeless_loop(), ng.graph, Mode::extended).empty(), ng.name);
  }
  // Without the extended rule a cycle has nowhere to collapse to edges.
  CHECK(enumerate_maps(cycle_graph(2), edge_graph(), Mode::plain).empty());
  CHECK_THROWS_AS(enumerate_maps(line_graph(4), star(1), Mode::plain), CapExceeded);
}

TEST_CASE("every enumerated map passes the checks, and the two enumerations agree") {
  for (const Pair& hs : hom_sets()) {
    const Graph& s = corpus_graph(hs.from);
    const Graph& t = corpus_graph(hs.to);
    CHECK_MESSAGE(enumerate_maps_by_tables(s, t, hs.mode) == hs.maps, hs.from, " -> ", hs.to);
    CHECK(std::is_sorted(hs.maps.begin(), hs.maps.end()));
    for (const NewGraphMap& m : hs.maps) {
      CHECK(check_new_map(m, hs.mode).ok());
      CHECK(check_classical(to_classical(m), hs.mode).ok());
    }
  }
}

TEST_CASE("the two presentations are inverse to each other") {
  for (const Pair& hs : hom_sets()) {
    const Graph& s = corpus_graph(hs.from);
    const Graph& t = corpus_graph(hs.to);
    std::vector<ClassicalMap> classical = enumerate_classical_maps(s, t, hs.mode);
    CHECK(classical.size() == hs.maps.size());
    for (const ClassicalMap& c : classical) {
      NewGraphMap m = from_classical(c, hs.mode);
      CHECK(to_classical(m) == c);
      CHECK(std::binary_search(hs.maps.begin(), hs.maps.end(), m));
      // The key shortcut fills in the same table.
      auto by_keys = from_classical_by_keys(c);
      REQUIRE(by_keys);
      CHECK(*by_keys == m);
    }
    for (const NewGraphMap& m : hs.maps) CHECK(from_classical(to_classical(m), hs.mode) == m);
  }
}

TEST_CASE("composition agrees in both presentations") {
  std::map<std::pair<std::string, std::string>, std::vector<const Pair*>> by_ends;
  for (const Pair& hs : hom_sets())
    if (hs.mode == Mode::extended) by_ends[{hs.from, hs.to}].push_back(&hs);
  int triples = 0;
  for (const std::string x : {"star2", "edge", "loop1", "line2", "cycle2", "nodeless_loop"})
    for (const std::string y : {"star2", "edge", "loop1", "cycle2", "nodeless_loop"})
      for (const std::string z : {"star2", "loop1", "no_joins", "nodeless_loop"}) {
        const auto& first = by_ends[{x, y}].front()->maps;
        const auto& second = by_ends[{y, z}].front()->maps;
        const auto& direct = by_ends[{x, z}].front()->maps;
        for (const NewGraphMap& f : first)
          for (const NewGraphMap& g : second) {
            NewGraphMap gf = compose(g, f);
            CHECK(std::binary_search(direct.begin(), direct.end(), gf));
            CHECK(to_classical(gf) == compose(to_classical(g), to_classical(f), Mode::extended));
            ++triples;
          }
      }
  CHECK(triples > 100);
  NewGraphMap id = identity_map(no_joins_graph());
  CHECK(compose(id, id) == id);
  CHECK_THROWS_AS(compose(identity_map(star(1)), id), GraphError);
}

TEST_CASE("vertex images split every class image") {
  for (const Pair& hs : hom_sets()) {
    for (const NewGraphMap& m : hs.maps) {
      const EmbPoset& p = emb_poset(m.source);
      const EmbPoset& q = emb_poset(m.target);
      for (int l = 0; l < p.size(); ++l) {
        std::vector<int> joined;
        std::size_t total = 0;
        for (int v : p.key(l).vertices) {
          const auto& part = q.key(m.classes[p.vertex_star(v)]).vertices;
          joined.insert(joined.end(), part.begin(), part.end());
          total += part.size();
        }
        std::sort(joined.begin(), joined.end());
        CHECK(std::adjacent_find(joined.begin(), joined.end()) == joined.end());
        CHECK(joined.size() == total);
        CHECK(joined == q.key(m.classes[l]).vertices);
      }
    }
  }
}

TEST_CASE("factorisation recomposes and has a canonical middle") {
  for (const Pair& hs : hom_sets()) {
    for (const NewGraphMap& m : hs.maps) {
      Factorization fa = factor(m, hs.mode);
      CHECK(compose(fa.inert, fa.active) == m);
      CHECK(classify(fa.active).active);
      CHECK(classify(fa.inert).inert);
      CHECK(check_new_map(fa.active, hs.mode).ok());
      CHECK(check_new_map(fa.inert, hs.mode).ok());
      Factorization fb = factor_by_substitution(m, hs.mode);
      CHECK(compose(fb.inert, fb.active) == m);
      CHECK(canonical_form(fa.middle) == canonical_form(fb.middle));
      // The middle is the source of the image of the top class.
      const EmbPoset& q = emb_poset(m.target);
      int image = m.classes[emb_poset(m.source).top()];
      CHECK(canonical_code(q.representative(image).source) == canonical_code(fa.middle));
    }
  }
}

TEST_CASE("inert maps are the maps of embeddings") {
  for (const Pair& hs : hom_sets()) {
    for (const NewGraphMap& m : hs.maps) {
      MapKind kind = classify(m);
      if (!kind.inert) continue;
      std::vector<int> verts;
      const EmbPoset& q = emb_poset(m.target);
      for (int v = 0; v < m.source.num_vertices(); ++v)
        verts.push_back(q.key(m.classes[emb_poset(m.source).vertex_star(v)]).vertices[0]);
      CHECK(from_embedding(GraphHom{m.source, m.target, m.arcs, verts}) == m);
    }
  }
  Graph g = no_joins_graph();
  const EmbPoset& p = emb_poset(g);
  for (int i = 0; i < p.size(); ++i) {
    NewGraphMap m = from_embedding(p.representative(i));
    CHECK(classify(m).inert);
    CHECK(m.classes[emb_poset(m.source).top()] == i);
    CHECK(classify(m).active == (i == p.top()));
  }
  MapKind id = classify(identity_map(g));
  CHECK(id.active);
  CHECK(id.inert);
}

TEST_CASE("a star with n legs has n! active maps onto a graph with n boundary arcs") {
  for (const auto& ng : standard_corpus()) {
    const int n = static_cast<int>(ng.graph.boundary().size());
    if (n > 4) continue;
    Mode mode = ng.extended_only ? Mode::extended : Mode::plain;
    auto maps = enumerate_maps(star(n), ng.graph, mode);
    int active = 0;
    for (const auto& m : maps) active += classify(m).active;
    CHECK_MESSAGE(active == factorial(n), ng.name);
  }
}

TEST_CASE("an embedding whose top image is not a least union") {
  Graph g = counterexample_source();
  Graph h = counterexample_target();
  GraphHom phi{g, h, std::vector<int>(g.num_arcs()), {h.vertex("v"), h.vertex("w")}};
  for (const char* a : {"e1v", "e1w"}) phi.arcs[g.arc(a)] = h.arc(a);
  phi.arcs[g.arc("e0v")] = h.arc("e0v");
  phi.arcs[g.arc("e0v†")] = h.arc("e0w");
  phi.arcs[g.arc("e0w")] = h.arc("e0w");
  phi.arcs[g.arc("e0w†")] = h.arc("e0v");
  REQUIRE(check_embedding(phi).ok());

  ClassicalMap c{g, h, phi.arcs, {}};
  const EmbPoset& p = emb_poset(g);
  const EmbPoset& q = emb_poset(h);
  for (int v = 0; v < g.num_vertices(); ++v) c.vertices.push_back(q.vertex_star(phi.vertices[v]));
  NewGraphMap m = from_classical(c, Mode::plain);
  REQUIRE(check_new_map(m, Mode::plain).ok());
  CHECK(m == from_embedding(phi));
  for (int v = 0; v < g.num_vertices(); ++v) CHECK(m.classes[p.vertex_star(v)] == q.vertex_star(phi.vertices[v]));
  CHECK(m.classes[p.top()] == q.index_of(class_of(phi)));
  CHECK(m.classes[p.top()] != q.top());
  // The image of the top is a union of the two stars, but not the least.
  int sv = q.vertex_star(h.vertex("v"));
  int sw = q.vertex_star(h.vertex("w"));
  const auto& u = q.unions(sv, sw);
  CHECK(std::find(u.begin(), u.end(), m.classes[p.top()]) != u.end());
  bool least = true;
  for (int l : u) least = least && q.leq(m.classes[p.top()], l);
  CHECK_FALSE(least);
}

TEST_CASE("the check names the failing axiom") {
  Graph g = loop_with_one_vertex();
  NewGraphMap m = identity_map(g);
  const EmbPoset& p = emb_poset(g);
  NewGraphMap bad = m;
  bad.classes[p.edge_class(0)] = p.vertex_star(0);
  CHECK(check_new_map(bad, Mode::plain).clause() == "(i) edges");
  bad = m;
  bad.classes[p.top()] = p.vertex_star(0);
  CHECK(check_new_map(bad, Mode::plain).clause() == "(iv) boundary");
  bad = m;
  bad.classes.pop_back();
  CHECK(check_new_map(bad, Mode::plain).clause() == "table-total");
  bad = m;
  std::swap(bad.arcs[0], bad.arcs[1]);
  bad.arcs[0] = bad.arcs[1];
  CHECK(check_new_map(bad, Mode::plain).clause() == "arc-involutive");
  CHECK(check_new_map(identity_map(nodeless_loop()), Mode::plain).clause() == "source");

  // Two disjoint stars sent onto one vertex.
  Graph l2 = line_graph(2);
  Graph s3 = star(3);
  auto maps = enumerate_maps(l2, s3, Mode::plain);
  REQUIRE_FALSE(maps.empty());
  const EmbPoset& pl = emb_poset(l2);
  NewGraphMap m2 = maps.front();
  m2.classes[pl.vertex_star(0)] = emb_poset(s3).top();
  m2.classes[pl.vertex_star(1)] = emb_poset(s3).top();
  CHECK_FALSE(check_new_map(m2, Mode::plain).ok());
}

TEST_CASE("substitution") {
  // Every vertex replaced by its own star gives the graph back.
  for (const auto& ng : standard_corpus()) {
    if (ng.extended_only) continue;
    ClassicalMap c = to_classical(identity_map(ng.graph));
    Substitution sub = substitute(ng.graph, pieces_of(c), Mode::plain);
    CHECK_MESSAGE(sub.result == ng.graph, ng.name);
  }
  // A two-leg vertex replaced by a two-vertex line.
  Graph s2 = star(2);
  Graph s3 = star(3);
  Graph l = line_graph(2);
  Piece line_piece{l, {}};
  std::vector<int> lb = l.boundary();
  const auto& darts = s2.nbhd(0);
  for (std::size_t i = 0; i < darts.size(); ++i) line_piece.match.emplace_back(darts[i], lb[i]);
  Substitution grafted = substitute(s2, {line_piece}, Mode::plain);
  CHECK(grafted.result.num_vertices() == 2);
  CHECK(isomorphic(grafted.result, l));
  REQUIRE(grafted.pieces.size() == 1);
  CHECK(check_embedding(grafted.pieces[0]).ok());

  // The cut star inside the one-vertex loop, filled with an edge, closes up.
  Graph loop = loop_with_one_vertex();
  Piece edge_piece{edge_graph(), {}};
  const auto& ld = loop.nbhd(0);
  std::vector<int> eb = edge_graph().boundary();
  edge_piece.match = {{ld[0], eb[0]}, {ld[1], eb[1]}};
  CHECK(is_nodeless_loop(substitute(loop, {edge_piece}, Mode::extended).result));
  CHECK_THROWS_AS(substitute(loop, {edge_piece}, Mode::plain), SubstitutionError);

  // Arity mismatch.
  const auto& d3 = s3.nbhd(0);
  Piece short_piece{s2, {{d3[0], s2.boundary()[0]}, {d3[1], s2.boundary()[1]}}};
  CHECK_THROWS_AS(substitute(s3, {short_piece}, Mode::plain), SubstitutionError);
  CHECK_THROWS_AS(substitute(s3, {}, Mode::plain), SubstitutionError);
}

TEST_CASE("graph complements are active and collapse the class") {
  for (const auto& ng : standard_corpus()) {
    if (ng.extended_only) continue;
    const Graph& h = ng.graph;
    const EmbPoset& p = emb_poset(h);
    for (int i = 0; i < p.size(); ++i) {
      Complement k = complement(h, i, Mode::plain);
      CHECK(check_new_map(k.active, Mode::plain).ok());
      CHECK(classify(k.active).active);
      ClassicalMap c = to_classical(k.active);
      CHECK(c.vertices[k.collapsed_vertex] == i);
      for (int v = 0; v < k.graph.num_vertices(); ++v)
        if (v != k.collapsed_vertex) CHECK(p.is_vertex_star(c.vertices[v]));
      const int expected = h.num_vertices() - static_cast<int>(p.key(i).vertices.size()) + 1;
      CHECK(k.graph.num_vertices() == expected);
    }
    // The identity collapses to a star on the whole boundary.
    Complement top = complement(h, p.top(), Mode::plain);
    CHECK(isomorphic(top.graph, star(static_cast<int>(h.boundary().size()))));
  }
  // An internal edge gains a two-valent vertex.
  Graph l2 = line_graph(2);
  const EmbPoset& p = emb_poset(l2);
  int inner = -1;
  for (int e = 0; e < l2.num_edges(); ++e)
    if (l2.is_internal_edge(e)) inner = p.edge_class(e);
  REQUIRE(inner >= 0);
  Complement k = complement(l2, inner, Mode::plain);
  CHECK(isomorphic(k.graph, line_graph(3)));
  CHECK(k.graph.nbhd(k.collapsed_vertex).size() == 2);
  CHECK_THROWS_AS(complement(nodeless_loop(), 0, Mode::extended), GraphError);
}
