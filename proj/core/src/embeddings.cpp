#include "graphcat/embeddings.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "names.hpp"

namespace graphcat {

GraphHom identity_hom(const Graph& g) {
  GraphHom f{g, g, std::vector<int>(g.num_arcs()), std::vector<int>(g.num_vertices())};
  std::iota(f.arcs.begin(), f.arcs.end(), 0);
  std::iota(f.vertices.begin(), f.vertices.end(), 0);
  return f;
}

GraphHom compose(const GraphHom& second, const GraphHom& first) {
  if (first.target != second.source) throw GraphError("compose: graphs do not match");
  GraphHom f{first.source, second.target, {}, {}};
  for (int x : first.arcs) f.arcs.push_back(second.arcs[x]);
  for (int x : first.vertices) f.vertices.push_back(second.vertices[x]);
  return f;
}

namespace {

bool is_stray_arc(const Graph& g, int a) { return !g.is_dart(a) && !g.in_boundary(a); }

}  // namespace

Status check_etale(const GraphHom& f) {
  const Graph& s = f.source;
  const Graph& t = f.target;
  if (static_cast<int>(f.arcs.size()) != s.num_arcs()) return Status::failure("arc-map", "wrong length");
  if (static_cast<int>(f.vertices.size()) != s.num_vertices())
    return Status::failure("vertex-map", "wrong length");
  for (int x : f.arcs)
    if (x < 0 || x >= t.num_arcs()) return Status::failure("arc-map", "image out of range");
  for (int x : f.vertices)
    if (x < 0 || x >= t.num_vertices()) return Status::failure("vertex-map", "image out of range");
  for (int a = 0; a < s.num_arcs(); ++a) {
    if (f.arcs[s.dagger(a)] != t.dagger(f.arcs[a]))
      return Status::failure("involution", "arc '" + s.arc_name(a) + "' breaks naturality");
    if (s.is_dart(a)) {
      if (!t.is_dart(f.arcs[a])) return Status::failure("darts", "dart '" + s.arc_name(a) + "' leaves the darts");
      if (t.attach(f.arcs[a]) != f.vertices[s.attach(a)])
        return Status::failure("attach", "dart '" + s.arc_name(a) + "' changes vertex");
    }
    if (is_stray_arc(s, a) && !is_stray_arc(t, f.arcs[a]))
      return Status::failure("stray-arcs", "loop arc '" + s.arc_name(a) + "' must map into a nodeless loop");
  }
  for (int v = 0; v < s.num_vertices(); ++v) {
    const auto& n = s.nbhd(v);
    std::set<int> img;
    for (int d : n) img.insert(f.arcs[d]);
    if (img.size() != n.size() || n.size() != t.nbhd(f.vertices[v]).size())
      return Status::failure("neighbourhood", "vertex '" + s.vertex_name(v) + "' is not a local bijection");
  }
  return {};
}

Status check_embedding(const GraphHom& f) {
  if (!is_connected(f.source)) return Status::failure("connected", "source is not connected");
  if (!is_connected(f.target)) return Status::failure("connected", "target is not connected");
  if (Status st = check_etale(f); !st) return st;
  std::set<int> vs(f.vertices.begin(), f.vertices.end());
  if (vs.size() != f.vertices.size()) return Status::failure("vertex-injective", "two vertices share an image");
  if (is_nodeless_loop(f.target) && !(is_nodeless_loop(f.source) || is_edge_graph(f.source)))
    return Status::failure("nodeless-loop", "only edges and the loop itself embed into a nodeless loop");
  if (is_nodeless_loop(f.source) && !is_nodeless_loop(f.target))
    return Status::failure("nodeless-loop", "a nodeless loop only embeds into itself");
  return {};
}

EmbClass class_of(const GraphHom& f) {
  EmbClass c;
  for (int v : f.vertices) c.vertices.push_back(v);
  for (int a : f.source.boundary()) c.boundary.push_back(f.arcs[a]);
  std::sort(c.vertices.begin(), c.vertices.end());
  c.vertices.erase(std::unique(c.vertices.begin(), c.vertices.end()), c.vertices.end());
  std::sort(c.boundary.begin(), c.boundary.end());
  return c;
}

std::vector<ClassInfo> enumerate_embeddings(const Graph& g) {
  if (!is_connected(g)) throw GraphError("Emb needs a connected graph");
  std::vector<ClassInfo> out;
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edges()[e];
    out.push_back({{{}, {ed.first, ed.second}}, {}, {e}});
  }
  if (is_nodeless_loop(g)) {
    out.push_back({{{}, {}}, {}, {0}});
    return out;
  }
  const int nv = g.num_vertices();
  if (nv > 20) throw CapExceeded("Emb enumeration is limited to 20 vertices");
  for (unsigned mask = 1; mask < (1u << nv); ++mask) {
    auto in_s = [&](int v) { return v >= 0 && ((mask >> v) & 1u); };
    std::vector<int> inner;  // internal edges with both ends in S
    std::vector<int> touched;
    for (int e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edges()[e];
      bool a = g.is_dart(ed.first) && in_s(g.attach(ed.first));
      bool b = g.is_dart(ed.second) && in_s(g.attach(ed.second));
      if (a && b) inner.push_back(e);
      if (a || b) touched.push_back(e);
    }
    std::vector<int> verts;
    for (int v = 0; v < nv; ++v)
      if (in_s(v)) verts.push_back(v);
    const int ni = static_cast<int>(inner.size());
    if (ni > 20) throw CapExceeded("Emb enumeration is limited to 20 internal edges");
    for (unsigned cut = 0; cut < (1u << ni); ++cut) {
      // S must stay connected through the edges that are kept.
      std::vector<int> parent(nv);
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (int i = 0; i < ni; ++i) {
        if ((cut >> i) & 1u) continue;
        const Edge& ed = g.edges()[inner[i]];
        parent[find(g.attach(ed.first))] = find(g.attach(ed.second));
      }
      bool connected = true;
      for (int v : verts) connected = connected && find(v) == find(verts.front());
      if (!connected) continue;
      std::vector<int> cut_edges;
      for (int i = 0; i < ni; ++i)
        if ((cut >> i) & 1u) cut_edges.push_back(inner[i]);
      EmbClass key{verts, {}};
      for (int d = 0; d < g.num_arcs(); ++d) {
        if (!g.is_dart(d) || !in_s(g.attach(d))) continue;
        int p = g.dagger(d);
        bool severed = std::binary_search(cut_edges.begin(), cut_edges.end(), g.edge_of(d));
        if (!g.is_dart(p) || !in_s(g.attach(p)) || severed) key.boundary.push_back(p);
      }
      std::sort(key.boundary.begin(), key.boundary.end());
      out.push_back({key, cut_edges, touched});
    }
  }
  return out;
}

GraphHom representative(const Graph& g, const ClassInfo& c) {
  const EmbClass& key = c.key;
  if (key.vertices.empty()) {
    if (key.boundary.empty()) return identity_hom(g);
    GraphSpec s;
    const int a = key.boundary[0];
    const int b = key.boundary[1];
    s.arcs = {g.arc_name(a), g.arc_name(b)};
    s.involution = {{g.arc_name(a), g.arc_name(b)}, {g.arc_name(b), g.arc_name(a)}};
    Graph h(s);
    GraphHom f{h, g, std::vector<int>(2), {}};
    f.arcs[h.arc(g.arc_name(a))] = a;
    f.arcs[h.arc(g.arc_name(b))] = b;
    return f;
  }
  auto in_s = [&](int v) { return std::binary_search(key.vertices.begin(), key.vertices.end(), v); };
  auto severed = [&](int e) { return std::binary_search(c.cut_edges.begin(), c.cut_edges.end(), e); };

  GraphSpec s;
  std::vector<int> images;  // target arc for each source arc, in s.arcs order
  NameAllocator names;
  for (int v : key.vertices) {
    s.vertices.push_back(g.vertex_name(v));
    s.nbhd.emplace_back(g.vertex_name(v), std::vector<std::string>{});
    for (int d : g.nbhd(v)) {
      s.nbhd.back().second.push_back(g.arc_name(d));
      names.reserve(g.arc_name(d));
    }
  }
  for (int v : key.vertices) {
    for (int d : g.nbhd(v)) {
      s.arcs.push_back(g.arc_name(d));
      images.push_back(d);
      int p = g.dagger(d);
      bool keep = g.is_dart(p) && in_s(g.attach(p)) && !severed(g.edge_of(d));
      if (keep) {
        s.involution.emplace_back(g.arc_name(d), g.arc_name(p));
        continue;
      }
      bool clash = g.is_dart(p) && in_s(g.attach(p));
      std::string bname = clash ? names.fresh(g.arc_name(p) + "~c") : names.fresh(g.arc_name(p));
      s.arcs.push_back(bname);
      images.push_back(p);
      s.involution.emplace_back(g.arc_name(d), bname);
      s.involution.emplace_back(bname, g.arc_name(d));
    }
  }
  Graph h(s);
  GraphHom f{h, g, std::vector<int>(h.num_arcs()), std::vector<int>(h.num_vertices())};
  for (std::size_t i = 0; i < s.arcs.size(); ++i) f.arcs[h.arc(s.arcs[i])] = images[i];
  for (int v = 0; v < h.num_vertices(); ++v) f.vertices[v] = g.vertex(h.vertex_name(v));
  return f;
}

namespace {

EmbClass push_forward(const GraphHom& k, const EmbClass& c) {
  EmbClass out;
  for (int v : c.vertices) out.vertices.push_back(k.vertices[v]);
  for (int a : c.boundary) out.boundary.push_back(k.arcs[a]);
  std::sort(out.vertices.begin(), out.vertices.end());
  std::sort(out.boundary.begin(), out.boundary.end());
  return out;
}

bool sorted_union_equals(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& u) {
  std::vector<int> m;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m == u;
}

}  // namespace

EmbPoset::EmbPoset(const Graph& g) : graph_(g) {
  classes_ = enumerate_embeddings(g);
  std::sort(classes_.begin(), classes_.end(), [](const ClassInfo& x, const ClassInfo& y) {
    if (x.key.vertices.size() != y.key.vertices.size()) return x.key.vertices.size() < y.key.vertices.size();
    return x.key < y.key;
  });
  const int n = size();
  for (int i = 0; i < n; ++i) {
    index_[classes_[i].key] = i;
    by_boundary_[classes_[i].key.boundary].push_back(i);
  }
  if (is_nodeless_loop(g)) {
    top_ = index_of({{}, {}});
  } else if (is_edge_graph(g)) {
    top_ = 0;
  } else {
    std::vector<int> all(g.num_vertices());
    std::iota(all.begin(), all.end(), 0);
    top_ = index_of({all, g.boundary()});
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    EmbClass star{{v}, {}};
    for (int d : g.nbhd(v)) star.boundary.push_back(g.dagger(d));
    std::sort(star.boundary.begin(), star.boundary.end());
    stars_.push_back(index_of(star));
  }
  for (const Edge& e : g.edges()) edge_classes_.push_back(index_of({{}, {e.first, e.second}}));

  leq_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int k = 0; k < n; ++k) {
    GraphHom rep = representative(k);
    for (const ClassInfo& sub : enumerate_embeddings(rep.source)) leq_[index_of(push_forward(rep, sub.key)) * n + k] = 1;
  }
  unions_.assign(static_cast<std::size_t>(n) * n, {});
  for (int h = 0; h < n; ++h) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        if (is_union(l, h, k)) {
          unions_[h * n + k].push_back(l);
          if (h <= k) triples_.push_back({l, h, k});
        }
      }
    }
  }
}

std::optional<int> EmbPoset::find(const EmbClass& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int EmbPoset::index_of(const EmbClass& key) const {
  auto i = find(key);
  if (!i) throw GraphError("no such embedding class");
  return *i;
}

bool EmbPoset::is_vertex_star(int i) const {
  const auto& vs = classes_[i].key.vertices;
  return vs.size() == 1 && stars_[vs[0]] == i;
}

bool EmbPoset::is_union(int l, int h, int k) const {
  return leq(h, l) && leq(k, l) &&
         sorted_union_equals(classes_[h].key.vertices, classes_[k].key.vertices, classes_[l].key.vertices);
}

bool EmbPoset::vertex_disjoint(int h, int k) const {
  const auto& a = classes_[h].key.vertices;
  const auto& b = classes_[k].key.vertices;
  std::vector<int> m;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m.empty();
}

GraphHom EmbPoset::representative(int i) const { return graphcat::representative(graph_, classes_[i]); }

const std::vector<int>& EmbPoset::classes_with_boundary(const std::vector<int>& boundary) const {
  static const std::vector<int> none;
  auto it = by_boundary_.find(boundary);
  return it == by_boundary_.end() ? none : it->second;
}

const EmbPoset& emb_poset(const Graph& g) {
  auto& cache = g.emb_cache();
  std::call_once(cache.once, [&] { cache.poset = std::make_shared<const EmbPoset>(g); });
  return *cache.poset;
}

bool leq(const Graph& g, const EmbClass& h, const EmbClass& k) {
  std::vector<ClassInfo> all = enumerate_embeddings(g);
  auto it = std::find_if(all.begin(), all.end(), [&](const ClassInfo& c) { return c.key == k; });
  if (it == all.end()) throw GraphError("leq: unknown class");
  GraphHom rep = representative(g, *it);
  for (const ClassInfo& sub : enumerate_embeddings(rep.source))
    if (push_forward(rep, sub.key) == h) return true;
  return false;
}

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

std::optional<GraphHom> pullback_pushout_union(const GraphHom& h, const GraphHom& k) {
  if (h.target != k.target) throw GraphError("union: embeddings have different targets");
  const Graph& H = h.source;
  const Graph& K = k.source;
  const int ha = H.num_arcs();
  const int hv = H.num_vertices();
  std::vector<std::pair<int, int>> arc_pairs;
  std::vector<std::pair<int, int>> vertex_pairs;
  for (int x = 0; x < ha; ++x)
    for (int y = 0; y < K.num_arcs(); ++y)
      if (h.arcs[x] == k.arcs[y]) arc_pairs.emplace_back(x, y);
  for (int x = 0; x < hv; ++x)
    for (int y = 0; y < K.num_vertices(); ++y)
      if (h.vertices[x] == k.vertices[y]) vertex_pairs.emplace_back(x, y);
  if (arc_pairs.empty() && vertex_pairs.empty()) return std::nullopt;

  Dsu arcs(ha + K.num_arcs());
  Dsu darts(ha + K.num_arcs());
  Dsu verts(hv + K.num_vertices());
  for (auto [x, y] : arc_pairs) {
    arcs.unite(x, ha + y);
    if (H.is_dart(x) && K.is_dart(y)) darts.unite(x, ha + y);
  }
  for (auto [x, y] : vertex_pairs) verts.unite(x, hv + y);

  auto is_dart = [&](int i) { return i < ha ? H.is_dart(i) : K.is_dart(i - ha); };
  auto name = [&](int i) { return i < ha ? "h." + H.arc_name(i) : "k." + K.arc_name(i - ha); };
  auto vname = [&](int i) { return i < hv ? "h." + H.vertex_name(i) : "k." + K.vertex_name(i - hv); };
  auto dag = [&](int i) { return i < ha ? H.dagger(i) : ha + K.dagger(i - ha); };
  auto att = [&](int i) { return i < ha ? H.attach(i) : hv + K.attach(i - ha); };
  auto img = [&](int i) { return i < ha ? h.arcs[i] : k.arcs[i - ha]; };
  auto vimg = [&](int i) { return i < hv ? h.vertices[i] : k.vertices[i - hv]; };

  // The dart quotient must embed in the arc quotient.
  const int total = ha + K.num_arcs();
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j)
      if (is_dart(i) && is_dart(j) && arcs.find(i) == arcs.find(j) && darts.find(i) != darts.find(j))
        throw GraphError("union: dart quotient does not embed in arc quotient");

  GraphSpec s;
  std::vector<int> arc_img;
  for (int i = 0; i < total; ++i) {
    if (arcs.find(i) != i) continue;
    s.arcs.push_back(name(i));
    s.involution.emplace_back(name(i), name(arcs.find(dag(i))));
    arc_img.push_back(img(i));
  }
  const int totalv = hv + K.num_vertices();
  std::vector<int> vert_img;
  for (int i = 0; i < totalv; ++i) {
    if (verts.find(i) != i) continue;
    s.vertices.push_back(vname(i));
    s.nbhd.emplace_back(vname(i), std::vector<std::string>{});
    vert_img.push_back(vimg(i));
  }
  // An arc class is a dart when any member is; all its dart members share a vertex class.
  std::vector<int> dart_member(total, -1);
  for (int i = 0; i < total; ++i)
    if (is_dart(i) && dart_member[arcs.find(i)] < 0) dart_member[arcs.find(i)] = i;
  std::vector<int> vslot(totalv, -1);
  for (std::size_t j = 0, i = 0; i < static_cast<std::size_t>(totalv); ++i)
    if (verts.find(static_cast<int>(i)) == static_cast<int>(i)) vslot[i] = static_cast<int>(j++);
  for (int i = 0; i < total; ++i) {
    if (arcs.find(i) != i || dart_member[i] < 0) continue;
    s.nbhd[vslot[verts.find(att(dart_member[i]))]].second.push_back(name(i));
  }
  // A non-dart class is a boundary arc when all its members are. Others only
  // arise from nodeless loops.
  auto in_bd = [&](int i) { return i < ha ? H.in_boundary(i) : K.in_boundary(i - ha); };
  std::vector<char> has_bd(total, 1);
  for (int i = 0; i < total; ++i)
    if (!is_dart(i) && !in_bd(i)) has_bd[arcs.find(i)] = 0;
  for (int i = 0; i < total; ++i)
    if (arcs.find(i) == i && dart_member[i] < 0 && !has_bd[i]) s.boundary = std::vector<std::string>{};
  if (s.boundary)
    for (int i = 0; i < total; ++i)
      if (arcs.find(i) == i && dart_member[i] < 0 && has_bd[i]) s.boundary->push_back(name(i));
  Graph L(s);
  GraphHom ell{L, h.target, std::vector<int>(L.num_arcs()), std::vector<int>(L.num_vertices())};
  for (std::size_t i = 0; i < s.arcs.size(); ++i) ell.arcs[L.arc(s.arcs[i])] = arc_img[i];
  for (std::size_t i = 0; i < s.vertices.size(); ++i) ell.vertices[L.vertex(s.vertices[i])] = vert_img[i];
  return ell;
}

std::optional<DeletableSplit> deletable_vertex_split(const EmbPoset& p, int l) {
  GraphHom ell = p.representative(l);
  const Graph& L = ell.source;
  std::vector<int> internal;
  for (int e = 0; e < L.num_edges(); ++e)
    if (L.is_internal_edge(e)) internal.push_back(e);
  if (internal.empty() || L.num_vertices() == 0) return std::nullopt;
  const Graph& G = p.graph();
  if (L.num_vertices() == 1) {
    const Edge& e = L.edges()[internal.front()];
    EmbClass rest{{}, {ell.arcs[e.first], ell.arcs[e.second]}};
    std::sort(rest.boundary.begin(), rest.boundary.end());
    return DeletableSplit{p.vertex_star(ell.vertices[0]), p.index_of(rest)};
  }
  // Pick a vertex whose removal keeps the core connected.
  const int nv = L.num_vertices();
  int chosen = -1;
  for (int v = 0; v < nv && chosen < 0; ++v) {
    Dsu d(nv);
    for (int e : internal) {
      int x = L.attach(L.edges()[e].first);
      int y = L.attach(L.edges()[e].second);
      if (x != v && y != v) d.unite(x, y);
    }
    int root = -1;
    bool ok = true;
    for (int u = 0; u < nv; ++u) {
      if (u == v) continue;
      if (root < 0) root = d.find(u);
      ok = ok && d.find(u) == root;
    }
    if (ok) chosen = v;
  }
  if (chosen < 0) throw GraphError("no deletable vertex found");
  const int v = chosen;
  std::set<int> nb(L.nbhd(v).begin(), L.nbhd(v).end());
  std::set<int> removed;
  for (int d : L.nbhd(v)) {
    int a = L.dagger(d);
    if (L.in_boundary(a) || nb.count(a)) {
      removed.insert(a);
      removed.insert(L.dagger(a));
    }
  }
  GraphSpec s;
  std::vector<int> inclusion;
  for (int a = 0; a < L.num_arcs(); ++a) {
    if (removed.count(a)) continue;
    s.arcs.push_back(L.arc_name(a));
    s.involution.emplace_back(L.arc_name(a), L.arc_name(L.dagger(a)));
    inclusion.push_back(a);
  }
  for (int u = 0; u < nv; ++u) {
    if (u == v) continue;
    s.vertices.push_back(L.vertex_name(u));
    std::vector<std::string> ds;
    for (int d : L.nbhd(u)) ds.push_back(L.arc_name(d));
    s.nbhd.emplace_back(L.vertex_name(u), ds);
  }
  Graph K(s);
  GraphHom g{K, L, std::vector<int>(K.num_arcs()), std::vector<int>(K.num_vertices())};
  for (int a = 0; a < K.num_arcs(); ++a) g.arcs[a] = L.arc(K.arc_name(a));
  for (int u = 0; u < K.num_vertices(); ++u) g.vertices[u] = L.vertex(K.vertex_name(u));
  (void)G;
  return DeletableSplit{p.vertex_star(ell.vertices[v]), p.index_of(class_of(compose(ell, g)))};
}

}  // namespace graphcat
