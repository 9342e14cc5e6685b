// Acceptance run: one PASS or FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>

#include "graphcat/canonical.hpp"
#include "graphcat/corpus.hpp"
#include "graphcat/directed.hpp"
#include "graphcat/oracle.hpp"
#include "graphcat/segal.hpp"
#include "graphcat/trees.hpp"
#include "oracles.hpp"

using namespace graphcat;

namespace {

// Collects failed expectations; keeps the first few messages.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (ok) return;
    ++failed_;
    if (first_.size() < 3) first_.push_back(what);
  }
  void note(const std::string& n) { notes_ += (notes_.empty() ? "" : ", ") + n; }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << count_ << " checks";
    if (!notes_.empty()) s << ", " << notes_;
    if (failed_) {
      s << "; " << failed_ << " failed:";
      for (const auto& f : first_) s << " [" << f << "]";
    }
    return s.str();
  }

 private:
  long count_ = 0;
  long failed_ = 0;
  std::vector<std::string> first_;
  std::string notes_;
};

const Catalog& catalog(CategoryKind kind) {
  static std::map<CategoryKind, std::unique_ptr<Catalog>> cache;
  auto& slot = cache[kind];
  if (!slot) slot = std::make_unique<Catalog>(Catalog::build(kind, catalog_corpus()));
  return *slot;
}

struct HomSet {
  const NamedGraph* source;
  const NamedGraph* target;
  Mode mode;
  std::vector<NewGraphMap> maps;
};

const std::vector<NamedGraph>& corpus() {
  static const auto c = standard_corpus();
  return c;
}

const std::vector<HomSet>& hom_sets() {
  static const std::vector<HomSet> all = [] {
    std::vector<HomSet> out;
    for (const auto& a : corpus())
      for (const auto& b : corpus())
        for (Mode mode : {Mode::plain, Mode::extended}) {
          if (mode == Mode::plain && (a.extended_only || b.extended_only)) continue;
          out.push_back({&a, &b, mode, enumerate_maps(a.graph, b.graph, mode)});
        }
    return out;
  }();
  return all;
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long power(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// 1. Embedding posets against the brute-force search.
void embedding_posets(Check& c) {
  int graphs = 0;
  std::set<std::string> names;
  for (const auto& ng : corpus()) {
    const Graph& g = ng.graph;
    names.insert(ng.name);
    c.expect(is_connected(g) && g.num_vertices() <= 3 && g.num_edges() <= 4, ng.name + " within corpus bounds");
    const EmbPoset& p = emb_poset(g);
    c.expect(static_cast<int>(enumerate_embeddings(g).size()) == p.size(), ng.name + " enumeration size");
    oracle::EmbSearch search = oracle::brute_force_emb(g);
    std::set<EmbClass> expected(search.classes.begin(), search.classes.end());
    c.expect(expected.size() == search.classes.size(), ng.name + " brute-force keys distinct");
    std::set<EmbClass> got;
    for (int i = 0; i < p.size(); ++i) got.insert(p.key(i));
    c.expect(got == expected, ng.name + " classes differ from brute force");
    // Order against factorization through witnesses.
    for (std::size_t h = 0; h < search.classes.size(); ++h)
      for (std::size_t k = 0; k < search.classes.size(); ++k)
        c.expect(p.leq(p.index_of(search.classes[h]), p.index_of(search.classes[k])) ==
                     oracle::brute_force_leq(search.witnesses[h], search.witnesses[k]),
                 ng.name + " order");
    ++graphs;
  }
  c.expect(graphs >= 12, "at least 12 graphs");
  for (const char* n : {"star0", "star1", "star2", "star3", "star4", "line2", "loop1", "no_joins", "nodeless_loop"})
    c.expect(names.count(n) > 0, std::string("corpus has ") + n);
  for (int n = 0; n <= 4; ++n) c.expect(emb_poset(star(n)).size() == n + 1, "|Emb(star n)| = n + 1");
  c.expect(emb_poset(loop_with_one_vertex()).size() == 3, "|Emb(loop1)| = 3");
  c.expect(emb_poset(nodeless_loop()).size() == 2, "|Emb(nodeless loop)| = 2");
  c.note(std::to_string(graphs) + " graphs");
}

// 2. The two presentations of maps.
void presentations(Check& c) {
  OracleReport r = check_presentations(corpus(), {}, {Mode::plain, Mode::extended});
  c.expect(r.ok(), r.failures.empty() ? "mismatch" : r.failures.front());
  c.expect(r.graphs == static_cast<int>(corpus().size()), "every corpus graph within the caps");
  c.note(std::to_string(r.pairs) + " hom-sets, " + std::to_string(r.maps) + " maps, " + std::to_string(r.triples) +
         " composable pairs");
}

// 3. Factorization.
void factorization(Check& c) {
  long maps = 0;
  for (const HomSet& hs : hom_sets()) {
    for (const NewGraphMap& m : hs.maps) {
      const std::string where = hs.source->name + " -> " + hs.target->name;
      Factorization fa = factor(m, hs.mode);
      c.expect(compose(fa.inert, fa.active) == m, where + " recomposes");
      c.expect(classify(fa.active).active && classify(fa.inert).inert, where + " active then inert");
      c.expect(check_new_map(fa.active, hs.mode).ok() && check_new_map(fa.inert, hs.mode).ok(), where + " factors are maps");
      Factorization fb = factor_by_substitution(m, hs.mode);
      c.expect(compose(fb.inert, fb.active) == m, where + " second factorization recomposes");
      c.expect(canonical_form(fa.middle) == canonical_form(fb.middle), where + " middles agree");
      ++maps;
    }
  }
  c.note(std::to_string(maps) + " maps");
}

// 4. Unions.
void unions(Check& c) {
  Graph g = loop_with_one_vertex();
  const EmbPoset& p = emb_poset(g);
  GraphHom h = p.representative(p.vertex_star(0));
  auto ell = pullback_pushout_union(h, h);
  c.expect(ell.has_value(), "pullback-pushout exists on the one-vertex loop");
  if (ell) {
    c.expect(check_embedding(*ell).ok(), "result is an embedding");
    c.expect(class_of(*ell) == p.key(p.top()), "result is the identity class");
    c.expect(isomorphic(ell->source, g), "result source is the whole graph");
  }

  Graph nj = no_joins_graph();
  const EmbPoset& q = emb_poset(nj);
  int sv = q.vertex_star(nj.vertex("v"));
  int sw = q.vertex_star(nj.vertex("w"));
  const auto& u = q.unions(sv, sw);
  c.expect(u.size() == 3, "three unions of the two stars");
  int one_edge = 0;
  for (int l : u) {
    c.expect(q.is_union(l, sv, sw), "is_union certifies each");
    if (l != q.top()) one_edge += q.key(l).vertices.size() == 2 && q.info(l).cut_edges.size() == 1;
  }
  c.expect(std::count(u.begin(), u.end(), q.top()) == 1, "identity among the unions");
  c.expect(one_edge == 2, "the two single-edge unions");
  int least = 0;
  for (int l : u) {
    bool below_all = true;
    for (int m : u) below_all = below_all && q.leq(l, m);
    least += below_all;
  }
  c.expect(least == 0, "no least union");
}

// 5. Active maps out of stars.
void active_stars(Check& c) {
  int graphs = 0;
  for (const auto& ng : corpus()) {
    const int n = static_cast<int>(ng.graph.boundary().size());
    if (n > 4) continue;
    Mode mode = ng.extended_only ? Mode::extended : Mode::plain;
    long active = 0;
    for (const auto& m : enumerate_maps(star(n), ng.graph, mode)) active += classify(m).active;
    c.expect(active == factorial(n), ng.name + ": " + std::to_string(active) + " active maps");
    ++graphs;
  }
  c.note(std::to_string(graphs) + " graphs");
}

// 6. The nodeless loop.
void nodeless_loop_maps(Check& c) {
  Graph k = nodeless_loop();
  c.expect(enumerate_maps(k, k, Mode::extended).size() == 2, "two automorphisms");
  for (int n = 1; n <= 3; ++n)
    c.expect(enumerate_maps(cycle_graph(n), k, Mode::extended).size() == 2, "two maps from cycle" + std::to_string(n));
  c.expect(enumerate_maps(star(0), k, Mode::extended).size() == 1, "one map from star0");
  for (const auto& ng : corpus()) {
    for (const auto& m : enumerate_maps(k, ng.graph, Mode::extended)) {
      MapKind kind = classify(m);
      c.expect(kind.active && kind.inert, "map out of the nodeless loop into " + ng.name + " is an isomorphism");
    }
  }
  int directed = 0;
  for (const Orientation& y : orientations_of(k)) {
    DirectedGraph dk{k, y};
    for (const Orientation& x : orientations_of(k))
      c.expect(enumerate_oriented_maps({k, x}, dk, Mode::extended).size() == 1, "oriented loop to loop");
    for (const DirectedGraph& d : oracle::directed_corpus()) {
      if (d.graph.num_vertices() == 1 && d.graph.num_arcs() == 0) continue;
      bool one_in_one_out = true;
      for (int v = 0; v < d.graph.num_vertices(); ++v)
        one_in_one_out =
            one_in_one_out && inputs_of_vertex(d, v).size() == 1 && outputs_of_vertex(d, v).size() == 1;
      c.expect(enumerate_oriented_maps(d, dk, Mode::extended).size() == (one_in_one_out ? 1u : 0u),
               "oriented maps into the loop: " + canonical_code(d.graph));
      ++directed;
    }
  }
  c.note(std::to_string(directed) + " directed sources");
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
    for (const auto& [x, y] : te)
      for (int flip = 0; flip < 2; ++flip) {
        arcs[se[i].first] = flip ? y : x;
        arcs[se[i].second] = flip ? x : y;
        self(self, i + 1);
      }
  };
  rec(rec, 0);
}

// 7. Trees.
void trees(Check& c) {
  long enumerated = 0, candidates = 0, arbitrary = 0;
  auto tc = tree_corpus();
  for (const auto& s : tc) {
    for (const auto& t : tc) {
      const std::string where = s.name + " -> " + t.name;
      std::vector<NewGraphMap> hom = enumerate_maps(s.graph, t.graph, Mode::plain);
      for (const auto& m : hom) c.expect(check_tree_map(m).ok(), where + " enumerated map passes the tree check");
      enumerated += static_cast<long>(hom.size());
      std::set<NewGraphMap> hom_set(hom.begin(), hom.end());
      std::size_t found = 0;
      // Boundary-compatible candidates: the table is forced by the arc map.
      for_each_arc_function(s.graph, t.graph, [&](const std::vector<int>& arcs) {
        auto forced = forced_tree_table(s.graph, t.graph, arcs);
        if (!forced) return;
        ++candidates;
        Status tree = check_tree_map(*forced);
        Status without = check_tree_map(*forced, {.check_intersections = false});
        Status full = check_new_map(*forced, Mode::plain);
        c.expect(tree.ok() == full.ok(), where + " tree check agrees with the full check");
        c.expect(without.ok() == tree.ok(), where + " intersections redundant");
        c.expect(full.ok() == (hom_set.count(*forced) > 0), where + " candidate in hom-set");
        found += full.ok();
      });
      c.expect(found == hom.size(), where + " every map is a candidate");

      // Arbitrary tables on small pairs.
      const int ns = emb_poset(s.graph).size();
      const int nt = emb_poset(t.graph).size();
      double tables = 1;
      for (int i = 0; i < ns; ++i) tables *= nt;
      for (std::size_t i = 0; i < s.graph.edges().size(); ++i) tables *= 2.0 * t.graph.edges().size();
      if (tables > 20000) continue;
      for_each_arc_function(s.graph, t.graph, [&](const std::vector<int>& arcs) {
        NewGraphMap m{s.graph, t.graph, arcs, std::vector<int>(ns, 0)};
        auto rec = [&](auto&& self, int i) -> void {
          if (i == ns) {
            ++arbitrary;
            c.expect(check_tree_map(m).ok() == check_new_map(m, Mode::plain).ok(), where + " arbitrary table");
            return;
          }
          for (int k = 0; k < nt; ++k) {
            m.classes[i] = k;
            self(self, i + 1);
          }
        };
        rec(rec, 0);
      });
    }
  }
  c.note(std::to_string(enumerated) + " tree maps, " + std::to_string(candidates) + " forced tables, " +
         std::to_string(arbitrary) + " arbitrary tables");
}

// 8. Properadic maps.
void properadic(Check& c) {
  std::vector<DirectedGraph> acyclic;
  for (const DirectedGraph& d : oracle::directed_corpus())
    if (is_acyclic(d)) acyclic.push_back(d);
  long accepted = 0, rejected = 0, active = 0;
  for (const DirectedGraph& s : acyclic)
    for (const DirectedGraph& t : acyclic) {
      std::set<std::vector<int>> edge_maps;
      for (const NewGraphMap& m : enumerate_oriented_maps(s, t, Mode::plain)) {
        bool structured = oracle::structured_by_lifting(t, m.classes[emb_poset(s.graph).top()]);
        bool ok = is_properadic(m, s.orientation, t.orientation);
        c.expect(ok == structured, "properadic iff the image of the whole graph is structured");
        if (classify(m).active) {
          c.expect(ok, "active maps between acyclic graphs are properadic");
          ++active;
        }
        if (!ok) {
          ++rejected;
          continue;
        }
        ++accepted;
        ProperadicMap r = properadic_restriction(m, s.orientation, t.orientation);
        c.expect(edge_maps.insert(r.edges).second, "distinct properadic maps have distinct edge maps");
      }
    }
  Graph ns = not_structured_graph();
  Orientation x = orientation_by_names(ns, {"top", "d", "e0", "e1", "side", "out", "bot"});
  const EmbPoset& p = emb_poset(ns);
  std::vector<int> tb = {ns.vertex("b"), ns.vertex("t")};
  std::sort(tb.begin(), tb.end());
  int found = 0;
  for (int cl = 0; cl < p.size(); ++cl) {
    if (p.key(cl).vertices != tb || !p.info(cl).cut_edges.empty()) continue;
    NewGraphMap m = from_embedding(p.representative(cl));
    Orientation sx = restrict_orientation(m, x);
    c.expect(check_oriented_map(m, sx, x, Mode::plain).ok(), "inclusion is an oriented map");
    c.expect(check_properadic(m, sx, x).clause() == "image not structured", "inclusion rejected");
    ++found;
  }
  c.expect(found == 1, "the inclusion exists");
  c.expect(rejected > 0 && accepted > 100, "both outcomes occur");
  c.note(std::to_string(accepted) + " accepted, " + std::to_string(rejected) + " rejected, " + std::to_string(active) +
         " active");
}

struct FunctorSpec {
  CategoryKind from;
  CategoryKind to;
};

const FunctorSpec kFibrations[] = {
    {CategoryKind::dendroidal, CategoryKind::cyclic},
    {CategoryKind::dendroidal, CategoryKind::dioperadic},
    {CategoryKind::dioperadic, CategoryKind::tree_oriented},
    {CategoryKind::tree_oriented, CategoryKind::tree},
    {CategoryKind::cyclic, CategoryKind::tree},
    {CategoryKind::dioperadic, CategoryKind::properadic},
    {CategoryKind::tree, CategoryKind::u},
    {CategoryKind::u_oriented, CategoryKind::u},
    {CategoryKind::u_oriented, CategoryKind::utilde_oriented},
    {CategoryKind::u, CategoryKind::utilde},
    {CategoryKind::utilde_oriented, CategoryKind::utilde},
};

const FunctorSpec kReflecting[] = {
    {CategoryKind::dendroidal, CategoryKind::cyclic},
    {CategoryKind::dioperadic, CategoryKind::tree},
    {CategoryKind::u_oriented, CategoryKind::u},
    {CategoryKind::utilde_oriented, CategoryKind::utilde},
};

std::string name(const FunctorSpec& f) { return to_string(f.from) + " -> " + to_string(f.to); }

// 9. Fibrations.
void fibrations(Check& c) {
  for (const auto& spec : kFibrations) {
    CatalogFunctor f = forgetful_functor(catalog(spec.from), catalog(spec.to));
    c.expect(check_functor(f).ok(), name(spec) + " functor");
    Status df = check_discrete_fibration(f);
    c.expect(df.ok(), name(spec) + " unique lifts: " + df.message());
    Status il = check_inert_lifts(f);
    c.expect(il.ok(), name(spec) + " inert lifts: " + il.message());
    Status ss = check_strong_segal(f);
    c.expect(ss.ok(), name(spec) + " elementary slices: " + ss.message());
  }
  c.note(std::to_string(std::size(kFibrations)) + " functors");
}

std::optional<int> removable_element(const Catalog& c, const Presheaf& x, int object) {
  std::set<int> hit;
  for (int f : c.out_of(object))
    if (c.is_elementary(c.morphism(f).target))
      for (int e : x.restriction[f]) hit.insert(e);
  for (int e = 0; e < x.sizes[object]; ++e)
    if (!hit.count(e)) return e;
  return std::nullopt;
}

// 10. Segal presheaves along the functors.
void segal(Check& c) {
  for (CategoryKind k : all_categories())
    c.expect(is_segal(catalog(k), terminal_presheaf(catalog(k))), "terminal is Segal on " + to_string(k));

  const Catalog& u = catalog(CategoryKind::u);
  const Catalog& uo = catalog(CategoryKind::u_oriented);
  CatalogFunctor orient = forgetful_functor(uo, u);
  int seeds = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Presheaf z = random_segal_presheaf(uo, seed);
    c.expect(check_presheaf(uo, z).ok(), "random presheaf is a presheaf");
    c.expect(is_segal(uo, z), "random presheaf is Segal");
    Presheaf lz = left_kan_extension(orient, z);
    c.expect(check_presheaf(u, lz).ok(), "extension is a presheaf");
    c.expect(is_segal(u, lz), "extension of seed " + std::to_string(seed) + " is Segal");
    ++seeds;
  }
  Presheaf t = left_kan_extension(orient, terminal_presheaf(uo));
  for (int o = 0; o < u.num_objects(); ++o)
    c.expect(t.sizes[o] == power(2, u.object(o).graph.num_edges()), "extension of the terminal counts orientations");

  for (const auto& spec : kFibrations) {
    const Catalog& d = catalog(spec.to);
    CatalogFunctor f = forgetful_functor(catalog(spec.from), d);
    for (std::uint64_t seed = 31; seed <= 33; ++seed) {
      Presheaf m = random_segal_presheaf(d, seed);
      c.expect(is_segal(catalog(spec.from), restrict_presheaf(f, m)), name(spec) + " restriction is Segal");
    }
  }
  int non_segal = 0;
  for (const auto& spec : kReflecting) {
    const Catalog& d = catalog(spec.to);
    CatalogFunctor f = forgetful_functor(catalog(spec.from), d);
    std::vector<Presheaf> ms = {random_segal_presheaf(d, 41), terminal_presheaf(d)};
    Presheaf base = coloured_presheaf(d, {{0}, 2, false});
    int big = *d.find_object("line2");
    if (auto e = removable_element(d, base, big)) ms.push_back(remove_element(d, base, big, *e));
    for (const Presheaf& m : ms) {
      c.expect(check_presheaf(d, m).ok(), name(spec) + " test presheaf");
      bool segal_m = is_segal(d, m);
      non_segal += !segal_m;
      if (is_segal(catalog(spec.from), restrict_presheaf(f, m))) c.expect(segal_m, name(spec) + " reflects");
      else c.expect(!segal_m, name(spec) + " preserves");
    }
  }
  c.expect(non_segal == static_cast<int>(std::size(kReflecting)), "a non-Segal presheaf for each reflection functor");

  const Catalog& cyc = catalog(CategoryKind::cyclic);
  const Catalog& om = catalog(CategoryKind::dendroidal);
  CatalogFunctor roots = forgetful_functor(om, cyc);
  Presheaf r = left_kan_extension(roots, terminal_presheaf(om));
  for (int o = 0; o < cyc.num_objects(); ++o)
    c.expect(r.sizes[o] == static_cast<int>(cyc.object(o).graph.boundary().size()), "extension counts roots");
  c.expect(is_segal(cyc, r), "root extension is Segal");
  c.note(std::to_string(seeds) + " random presheaves");
}

// 11. The vertex-collapse functor.
void gamma_suite(Check& c) {
  for (CategoryKind k : all_categories()) {
    Status st = check_gamma(catalog(k));
    c.expect(st.ok(), to_string(k) + ": " + st.message());
  }
  int squares = 0;
  for (const auto& ng : catalog_corpus()) {
    Mode mode = ng.extended_only ? Mode::extended : Mode::plain;
    const EmbPoset& p = emb_poset(ng.graph);
    for (int cl = 0; cl < p.size(); ++cl) {
      if (p.is_edge(cl) || is_nodeless_loop(ng.graph)) continue;
      SubstitutionSquare sq = substitution_square(ng.graph, cl, mode);
      c.expect(check_square_commutes(sq).ok(), ng.name + " square commutes");
      c.expect(gamma_pullback(sq), ng.name + " pullback");
      ++squares;
    }
  }
  c.expect(squares >= 5, "at least five squares");
  c.note(std::to_string(squares) + " squares");
}

struct Criterion {
  int number;
  const char* title;
  double budget_seconds;  // 0 for none
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "embedding posets match the brute-force search", 60, embedding_posets},
      {2, "class-table and vertex-image maps correspond and compose alike", 300, presentations},
      {3, "factorizations recompose with canonical middles", 0, factorization},
      {4, "unions on the one-vertex loop and the parallel-edge graph", 0, unions},
      {5, "n! active maps out of the n-star", 0, active_stars},
      {6, "maps into and out of the nodeless loop", 0, nodeless_loop_maps},
      {7, "tree maps by subtrees", 0, trees},
      {8, "properadic maps", 0, properadic},
      {9, "discrete fibrations, inert lifts and elementary slices", 0, fibrations},
      {10, "Segal presheaves along restriction and extension", 600, segal},
      {11, "vertex-collapse functor", 0, gamma_suite},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget_seconds > 0) check.expect(secs <= cr.budget_seconds, "over the time budget");
    const bool ok = check.ok();
    failures += !ok;
    std::printf("%s %d: %s (%s; %.1f s)\n", ok ? "PASS" : "FAIL", cr.number, cr.title, check.summary().c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
