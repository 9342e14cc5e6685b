#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "graphcat/corpus.hpp"

using namespace graphcat;

namespace oracle {

namespace {

// All functions from arcs of s with fixed images under target maps:
// u(a) ranges over arcs y with along(y) == want(a).
template <class Visit>
void for_each_lift(const Graph& s, const Graph& t, const std::vector<int>& want, const std::vector<int>& along,
                   Visit visit) {
  std::vector<std::vector<int>> options(s.num_arcs());
  for (int a = 0; a < s.num_arcs(); ++a)
    for (int y = 0; y < t.num_arcs(); ++y)
      if (along[y] == want[a]) options[a].push_back(y);
  std::vector<int> u(s.num_arcs());
  auto rec = [&](auto&& self, int a) -> bool {
    if (a == s.num_arcs()) return visit(u);
    for (int y : options[a]) {
      u[a] = y;
      if (self(self, a + 1)) return true;
    }
    return false;
  };
  rec(rec, 0);
}

std::vector<int> vertex_lift(const GraphHom& outer, const GraphHom& inner_target, bool* ok) {
  std::vector<int> out;
  *ok = true;
  for (int x : outer.vertices) {
    int found = -1;
    for (int y = 0; y < inner_target.source.num_vertices(); ++y)
      if (inner_target.vertices[y] == x) found = y;
    if (found < 0) *ok = false;
    out.push_back(found);
  }
  return out;
}

}  // namespace

bool iso_over_target(const GraphHom& f, const GraphHom& f2) {
  if (f.source.num_arcs() != f2.source.num_arcs() || f.source.num_vertices() != f2.source.num_vertices())
    return false;
  bool ok = false;
  std::vector<int> verts = vertex_lift(f, f2, &ok);
  if (!ok) return false;
  bool found = false;
  for_each_lift(f.source, f2.source, f.arcs, f2.arcs, [&](const std::vector<int>& z) {
    std::set<int> img(z.begin(), z.end());
    if (static_cast<int>(img.size()) != f.source.num_arcs()) return false;
    GraphHom zh{f.source, f2.source, z, verts};
    if (!check_etale(zh)) return false;
    for (int a = 0; a < f.source.num_arcs(); ++a)
      if (f.source.is_dart(a) != f2.source.is_dart(z[a]) || f.source.in_boundary(a) != f2.source.in_boundary(z[a]))
        return false;
    found = true;
    return true;
  });
  return found;
}

bool brute_force_leq(const GraphHom& h, const GraphHom& k) {
  bool ok = false;
  std::vector<int> verts = vertex_lift(h, k, &ok);
  if (!ok) return false;
  bool found = false;
  for_each_lift(h.source, k.source, h.arcs, k.arcs, [&](const std::vector<int>& u) {
    if (check_embedding(GraphHom{h.source, k.source, u, verts})) found = true;
    return found;
  });
  return found;
}

namespace {

struct Collector {
  const Graph& g;
  EmbSearch out;
  void add(const GraphHom& f) {
    ++out.embeddings_seen;
    for (const auto& w : out.witnesses)
      if (iso_over_target(f, w)) return;
    out.witnesses.push_back(f);
    out.classes.push_back(class_of(f));
  }
};

// Builds the graph with k vertices, vertex i having valence val[i], darts
// named "i.j", and the given pairing of darts (-1 for a free end).
Graph build_candidate(const std::vector<int>& val, const std::vector<std::vector<int>>& dart_id,
                      const std::vector<int>& mate) {
  GraphSpec s;
  const int nd = static_cast<int>(mate.size());
  std::vector<std::string> dname(nd);
  for (std::size_t i = 0; i < val.size(); ++i) {
    std::string vn = "u" + std::to_string(i);
    s.vertices.push_back(vn);
    std::vector<std::string> ds;
    for (int j = 0; j < val[i]; ++j) {
      dname[dart_id[i][j]] = vn + "." + std::to_string(j);
      ds.push_back(dname[dart_id[i][j]]);
    }
    s.nbhd.emplace_back(vn, ds);
  }
  for (int d = 0; d < nd; ++d) {
    s.arcs.push_back(dname[d]);
    if (mate[d] >= 0) {
      s.involution.emplace_back(dname[d], dname[mate[d]]);
    } else {
      s.arcs.push_back(dname[d] + "^");
      s.involution.emplace_back(dname[d], dname[d] + "^");
      s.involution.emplace_back(dname[d] + "^", dname[d]);
    }
  }
  return Graph(s);
}

}  // namespace

EmbSearch brute_force_emb(const Graph& g) {
  Collector col{g, {}};
  // Sources without vertices: the edge, and the nodeless loop.
  Graph e = edge_graph();
  for (int x = 0; x < g.num_arcs(); ++x) {
    GraphHom f{e, g, {x, g.dagger(x)}, {}};
    if (check_embedding(f)) col.add(f);
  }
  Graph nl = nodeless_loop();
  for (int x = 0; x < g.num_arcs(); ++x) {
    GraphHom f{nl, g, {x, g.dagger(x)}, {}};
    if (check_embedding(f)) col.add(f);
  }

  const int nv = g.num_vertices();
  for (unsigned mask = 1; mask < (1u << nv); ++mask) {
    std::vector<int> sigma;
    for (int v = 0; v < nv; ++v)
      if ((mask >> v) & 1u) sigma.push_back(v);
    const int k = static_cast<int>(sigma.size());
    std::vector<int> val(k);
    std::vector<std::vector<int>> dart_id(k);
    int nd = 0;
    for (int i = 0; i < k; ++i) {
      val[i] = static_cast<int>(g.nbhd(sigma[i]).size());
      for (int j = 0; j < val[i]; ++j) dart_id[i].push_back(nd++);
    }
    std::vector<int> owner(nd);
    std::vector<int> slot(nd);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < val[i]; ++j) owner[dart_id[i][j]] = i, slot[dart_id[i][j]] = j;

    std::vector<int> mate(nd, -2);
    auto with_graph = [&](const Graph& h) {
      if (!is_connected(h)) return;
      // Every choice of bijection at each vertex.
      std::vector<std::vector<int>> perm(k);
      for (int i = 0; i < k; ++i) {
        perm[i].resize(val[i]);
        std::iota(perm[i].begin(), perm[i].end(), 0);
      }
      auto rec = [&](auto&& self, int i) -> void {
        if (i == k) {
          GraphHom f{h, g, std::vector<int>(h.num_arcs()), std::vector<int>(k)};
          for (int ii = 0; ii < k; ++ii) f.vertices[h.vertex("u" + std::to_string(ii))] = sigma[ii];
          for (int d = 0; d < nd; ++d) {
            int i0 = owner[d];
            std::string dn = "u" + std::to_string(i0) + "." + std::to_string(slot[d]);
            int target = g.nbhd(sigma[i0])[perm[i0][slot[d]]];
            f.arcs[h.arc(dn)] = target;
            if (mate[d] < 0) f.arcs[h.arc(dn + "^")] = g.dagger(target);
          }
          if (check_embedding(f)) col.add(f);
          return;
        }
        std::sort(perm[i].begin(), perm[i].end());
        do {
          self(self, i + 1);
        } while (std::next_permutation(perm[i].begin(), perm[i].end()));
      };
      rec(rec, 0);
    };
    auto match = [&](auto&& self, int d) -> void {
      while (d < nd && mate[d] != -2) ++d;
      if (d == nd) {
        with_graph(build_candidate(val, dart_id, mate));
        return;
      }
      mate[d] = -1;
      self(self, d + 1);
      for (int x = d + 1; x < nd; ++x) {
        if (mate[x] != -2) continue;
        mate[d] = x;
        mate[x] = d;
        self(self, d + 1);
        mate[x] = -2;
      }
      mate[d] = -2;
    };
    match(match, 0);
  }
  return col.out;
}

std::vector<DirectedGraph> directed_corpus() {
  std::vector<DirectedGraph> out;
  for (const auto& ng : standard_corpus()) {
    if (ng.extended_only) continue;
    for (const Orientation& x : orientations_of(ng.graph)) out.push_back({ng.graph, x});
  }
  return out;
}

bool structured_by_lifting(const DirectedGraph& g, int c) {
  const EmbPoset& p = emb_poset(g.graph);
  GraphHom rep = p.representative(c);
  std::set<int> img(rep.arcs.begin(), rep.arcs.end());
  if (static_cast<int>(img.size()) != rep.source.num_arcs()) return false;
  std::set<int> image_edges;
  for (int a : rep.arcs) image_edges.insert(g.graph.edge_of(a));
  bool ok = true;
  for_each_path(g, g.graph.num_vertices(), [&](const Path& path) {
    if (!image_edges.count(path.first_edge) || !image_edges.count(last_edge(g.graph, path))) return;
    for (auto [in, out] : path.steps) {
      bool lifted = false;
      for (int d = 0; d < rep.source.num_arcs(); ++d) {
        if (!rep.source.is_dart(d) || rep.arcs[d] != in) continue;
        int u = rep.source.attach(d);
        for (int d2 : rep.source.nbhd(u))
          if (rep.arcs[d2] == out) lifted = true;
      }
      ok = ok && lifted;
    }
  });
  return ok;
}

}  // namespace oracle
