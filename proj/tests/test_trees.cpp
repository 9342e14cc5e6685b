#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "graphcat/corpus.hpp"
#include "graphcat/trees.hpp"

using namespace graphcat;

namespace {

bool includes(const Subtree& big, const Subtree& small) {
  auto inc = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(a.begin(), a.end(), b.begin(), b.end());
  };
  return inc(big.arcs, small.arcs) && inc(big.darts, small.darts) && inc(big.vertices, small.vertices);
}

// Brute force: pick edges and vertices, take every dart at a chosen vertex,
// keep the choice when those darts lie on chosen edges and the incidence
// between chosen edges and vertices is connected.
std::set<Subtree> subtrees_by_search(const Graph& t) {
  const auto& edges = t.edges();
  const int ne = static_cast<int>(edges.size());
  const int nv = t.num_vertices();
  std::set<Subtree> out;
  for (int em = 0; em < (1 << ne); ++em) {
    for (int vm = 0; vm < (1 << nv); ++vm) {
      if (em == 0 && vm == 0) continue;
      Subtree s;
      for (int e = 0; e < ne; ++e)
        if (em >> e & 1) {
          s.arcs.push_back(edges[e].first);
          s.arcs.push_back(edges[e].second);
        }
      for (int v = 0; v < nv; ++v)
        if (vm >> v & 1) {
          s.vertices.push_back(v);
          for (int d : t.nbhd(v)) s.darts.push_back(d);
        }
      std::sort(s.arcs.begin(), s.arcs.end());
      std::sort(s.darts.begin(), s.darts.end());
      if (!std::includes(s.arcs.begin(), s.arcs.end(), s.darts.begin(), s.darts.end())) continue;
      // Flood fill over chosen edges (0..ne-1) and chosen vertices (ne..).
      std::vector<int> seen(ne + nv, 0);
      std::function<void(int)> go = [&](int x) {
        if (seen[x]) return;
        seen[x] = 1;
        if (x < ne) {
          for (int a : {edges[x].first, edges[x].second})
            if (t.is_dart(a) && (vm >> t.attach(a) & 1)) go(ne + t.attach(a));
        } else {
          for (int d : t.nbhd(x - ne)) go(t.edge_of(d));
        }
      };
      int start = em ? __builtin_ctz(em) : ne + __builtin_ctz(vm);
      go(start);
      bool connected = true;
      for (int e = 0; e < ne; ++e)
        if ((em >> e & 1) && !seen[e]) connected = false;
      for (int v = 0; v < nv; ++v)
        if ((vm >> v & 1) && !seen[ne + v]) connected = false;
      if (connected) out.insert(s);
    }
  }
  return out;
}

// Every involutive arc function source -> target.
template <class Visit>
void for_each_arc_function(const Graph& s, const Graph& t, Visit visit) {
  const auto& se = s.edges();
  const auto& te = t.edges();
  std::vector<int> arcs(s.num_arcs(), -1);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == se.size()) {
      visit(arcs);
      return;
    }
    for (const auto& [x, y] : te) {
      for (int flip = 0; flip < 2; ++flip) {
        arcs[se[i].first] = flip ? y : x;
        arcs[se[i].second] = flip ? x : y;
        self(self, i + 1);
      }
    }
  };
  rec(rec, 0);
}

}  // namespace

TEST_CASE("subtrees match embedding classes and a direct search") {
  for (const auto& ng : tree_corpus()) {
    CAPTURE(ng.name);
    const Graph& t = ng.graph;
    const EmbPoset& p = emb_poset(t);
    std::vector<Subtree> list = subtrees(t);
    REQUIRE(static_cast<int>(list.size()) == p.size());
    std::set<Subtree> as_set(list.begin(), list.end());
    CHECK(as_set.size() == list.size());
    CHECK(as_set == subtrees_by_search(t));
    for (int c = 0; c < p.size(); ++c) {
      CHECK(check_subtree(t, list[c]).ok());
      CHECK(class_of_subtree(t, list[c]) == c);
      CHECK(list[c].vertices == p.key(c).vertices);
      for (int d = 0; d < p.size(); ++d) CHECK(p.leq(c, d) == includes(list[d], list[c]));
    }
  }
}

TEST_CASE("boundary determines the class on trees") {
  for (const auto& ng : tree_corpus()) {
    CAPTURE(ng.name);
    const EmbPoset& p = emb_poset(ng.graph);
    std::set<std::vector<int>> seen;
    for (int c = 0; c < p.size(); ++c) CHECK(seen.insert(p.key(c).boundary).second);
  }
}

TEST_CASE("overlapping subtrees have subtree unions and intersections") {
  for (const auto& ng : tree_corpus()) {
    CAPTURE(ng.name);
    const Graph& t = ng.graph;
    const EmbPoset& p = emb_poset(t);
    std::vector<Subtree> list = subtrees(t);
    for (int h = 0; h < p.size(); ++h) {
      for (int k = 0; k < p.size(); ++k) {
        auto u = tree_union(list[h], list[k]);
        auto i = tree_intersection(list[h], list[k]);
        CHECK(u.has_value() == overlap(list[h], list[k]));
        CHECK(i.has_value() == u.has_value());
        if (!u) {
          CHECK(p.unions(h, k).empty());
          continue;
        }
        REQUIRE(check_subtree(t, *u).ok());
        REQUIRE(check_subtree(t, *i).ok());
        // The union of overlapping subtrees is the only union in the poset.
        CHECK(p.unions(h, k) == std::vector<int>{class_of_subtree(t, *u)});
      }
    }
  }
}

TEST_CASE("small subtree facts") {
  Graph l2 = line_graph(2);
  const EmbPoset& p = emb_poset(l2);
  std::vector<Subtree> list = subtrees(l2);
  Subtree a = list[p.vertex_star(0)];
  Subtree b = list[p.vertex_star(1)];
  CHECK(overlap(a, b));
  CHECK(*tree_union(a, b) == list[p.top()]);
  CHECK(tree_intersection(a, b)->vertices.empty());
  CHECK(tree_intersection(a, b)->arcs.size() == 2);

  Graph s2 = star(2);
  const EmbPoset& q = emb_poset(s2);
  std::vector<Subtree> legs;
  for (int c = 0; c < q.size(); ++c)
    if (q.is_edge(c)) legs.push_back(subtrees(s2)[c]);
  REQUIRE(legs.size() == 2);
  CHECK_FALSE(overlap(legs[0], legs[1]));
  CHECK_FALSE(tree_union(legs[0], legs[1]));

  CHECK(subtrees(star(0)).size() == 1);
  CHECK(subtrees(star(3)).size() == 4);
  CHECK(check_subtree(l2, Subtree{{}, {}, {}}).clause() == "connected");
  CHECK(check_subtree(l2, Subtree{{}, {}, {0}}).clause() == "neighbourhood");
}

TEST_CASE("non-trees are rejected") {
  CHECK_THROWS_AS(subtrees(cycle_graph(2)), GraphError);
  CHECK_THROWS_AS(subtrees(nodeless_loop()), GraphError);
  CHECK_THROWS_AS(subtrees(loop_with_one_vertex()), GraphError);
  NewGraphMap m = identity_map(cycle_graph(2));
  CHECK(check_tree_map(m).clause() == "trees");
}

TEST_CASE("tree maps agree with graphical maps") {
  std::map<std::string, int> clauses;
  auto corpus = tree_corpus();
  for (const auto& s : corpus) {
    for (const auto& t : corpus) {
      CAPTURE(s.name);
      CAPTURE(t.name);
      std::vector<NewGraphMap> hom = enumerate_maps(s.graph, t.graph, Mode::plain);
      for (const auto& m : hom) CHECK(check_tree_map(m).ok());
      std::set<NewGraphMap> hom_set(hom.begin(), hom.end());
      std::size_t found = 0;
      for_each_arc_function(s.graph, t.graph, [&](const std::vector<int>& arcs) {
        auto forced = forced_tree_table(s.graph, t.graph, arcs);
        if (!forced) return;
        Status tree = check_tree_map(*forced);
        Status full = check_new_map(*forced, Mode::plain);
        CHECK(tree.ok() == full.ok());
        CHECK(full.ok() == hom_set.count(*forced) > 0);
        if (full.ok()) ++found;
        ++clauses[tree.ok() ? "ok" : tree.clause()];
        // Dropping the intersection clause changes nothing.
        CHECK(check_tree_map(*forced, {.check_intersections = false}).ok() == tree.ok());
      });
      CHECK(found == hom.size());
    }
  }
  // On this corpus every table compatible with (iv) is already a map.
  CHECK(clauses["ok"] > 0);
  CHECK(clauses.size() == 1);
}

TEST_CASE("tree maps agree with graphical maps on arbitrary tables") {
  auto corpus = tree_corpus();
  int pairs = 0;
  for (const auto& s : corpus) {
    for (const auto& t : corpus) {
      const int ns = emb_poset(s.graph).size();
      const int nt = emb_poset(t.graph).size();
      double tables = 1;
      for (int i = 0; i < ns; ++i) tables *= nt;
      for (std::size_t i = 0; i < s.graph.edges().size(); ++i) tables *= 2.0 * t.graph.edges().size();
      if (tables > 20000) continue;
      ++pairs;
      CAPTURE(s.name);
      CAPTURE(t.name);
      for_each_arc_function(s.graph, t.graph, [&](const std::vector<int>& arcs) {
        NewGraphMap m{s.graph, t.graph, arcs, std::vector<int>(ns, 0)};
        auto rec = [&](auto&& self, int i) -> void {
          if (i == ns) {
            CHECK(check_tree_map(m).ok() == check_new_map(m, Mode::plain).ok());
            return;
          }
          for (int c = 0; c < nt; ++c) {
            m.classes[i] = c;
            self(self, i + 1);
          }
        };
        rec(rec, 0);
      });
    }
  }
  CHECK(pairs > 10);
}

TEST_CASE("tree map diagnostics") {
  Graph l2 = line_graph(2);
  NewGraphMap id = identity_map(l2);
  NewGraphMap bad = id;
  std::swap(bad.classes[emb_poset(l2).vertex_star(0)], bad.classes[emb_poset(l2).vertex_star(1)]);
  CHECK(check_tree_map(bad).clause() == "(iv) boundary");
  bad = id;
  bad.classes.pop_back();
  CHECK(check_tree_map(bad).clause() == "table-total");
  bad = id;
  bad.arcs[0] = bad.arcs[1];
  CHECK(check_tree_map(bad).clause() == "arc-map");
}
