#include "graphcat/graphical_maps.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "names.hpp"

namespace graphcat {

namespace {

bool involutive(const Graph& s, const Graph& t, const std::vector<int>& arcs) {
  for (int a = 0; a < s.num_arcs(); ++a)
    if (arcs[s.dagger(a)] != t.dagger(arcs[a])) return false;
  return true;
}

Status check_arc_function(const Graph& s, const Graph& t, const std::vector<int>& arcs) {
  if (static_cast<int>(arcs.size()) != s.num_arcs()) return Status::failure("arc-map", "not total on source arcs");
  for (int x : arcs)
    if (x < 0 || x >= t.num_arcs()) return Status::failure("arc-map", "image out of range");
  if (!involutive(s, t, arcs)) return Status::failure("arc-involutive", "arc map does not commute with the involution");
  return {};
}

std::vector<int> image_sorted(const std::vector<int>& arcs, const std::vector<int>& xs, bool* injective) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (int x : xs) out.push_back(arcs[x]);
  std::sort(out.begin(), out.end());
  if (injective) *injective = std::adjacent_find(out.begin(), out.end()) == out.end();
  return out;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Status check_object(const Graph& g, Mode mode) {
  if (Status st = validate(g, mode); !st) return st;
  if (!is_connected(g)) return Status::failure("connected", "graph is empty or disconnected");
  if (mode == Mode::plain && is_nodeless_loop(g))
    return Status::failure("plain-object", "nodeless loops need extended mode");
  return {};
}

Status check_new_map(const NewGraphMap& m, Mode mode) {
  if (Status st = check_object(m.source, mode); !st) return Status::failure("source", st.message());
  if (Status st = check_object(m.target, mode); !st) return Status::failure("target", st.message());
  if (Status st = check_arc_function(m.source, m.target, m.arcs); !st) return st;
  const EmbPoset& p = emb_poset(m.source);
  const EmbPoset& q = emb_poset(m.target);
  if (static_cast<int>(m.classes.size()) != p.size())
    return Status::failure("table-total", "class table does not cover Emb of the source");
  for (int c : m.classes)
    if (c < 0 || c >= q.size()) return Status::failure("table-total", "class image out of range");
  for (int i = 0; i < p.size(); ++i)
    if (p.is_edge(i) && !q.is_edge(m.classes[i])) return Status::failure("(i) edges", "an edge goes to a non-edge");
  for (const auto& [l, h, k] : p.union_triples())
    if (!q.is_union(m.classes[l], m.classes[h], m.classes[k]))
      return Status::failure("(ii) unions", "a union is not sent to a union");
  for (int h = 0; h < p.size(); ++h)
    for (int k = h + 1; k < p.size(); ++k)
      if (p.vertex_disjoint(h, k) && !q.vertex_disjoint(m.classes[h], m.classes[k]))
        return Status::failure("(iii) disjoint", "vertex-disjoint classes meet in the image");
  for (int i = 0; i < p.size(); ++i) {
    bool inj = false;
    auto img = image_sorted(m.arcs, p.key(i).boundary, &inj);
    if (!inj || img != q.key(m.classes[i]).boundary)
      return Status::failure("(iv) boundary", "boundary of an image class differs from the arc image");
  }
  return {};
}

Status check_classical(const ClassicalMap& m, Mode mode) {
  if (Status st = check_object(m.source, mode); !st) return Status::failure("source", st.message());
  if (Status st = check_object(m.target, mode); !st) return Status::failure("target", st.message());
  if (Status st = check_arc_function(m.source, m.target, m.arcs); !st) return st;
  const Graph& g = m.source;
  const EmbPoset& q = emb_poset(m.target);
  if (static_cast<int>(m.vertices.size()) != g.num_vertices())
    return Status::failure("vertex-map", "not total on source vertices");
  for (int c : m.vertices)
    if (c < 0 || c >= q.size()) return Status::failure("vertex-map", "class out of range");
  std::vector<int> seen(m.target.num_vertices(), 0);
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int w : q.key(m.vertices[v]).vertices)
      if (seen[w]++) return Status::failure("(i) disjoint", "vertex images overlap");
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::vector<int> opp;
    for (int d : g.nbhd(v)) opp.push_back(g.dagger(d));
    bool inj = false;
    auto img = image_sorted(m.arcs, opp, &inj);
    if (!inj || img != q.key(m.vertices[v]).boundary)
      return Status::failure("(ii) boundary", "vertex '" + g.vertex_name(v) + "' does not match its image boundary");
  }
  if (g.boundary().empty()) {
    bool all_edges = true;
    for (int c : m.vertices) all_edges = all_edges && q.is_edge(c);
    if (all_edges) {
      if (mode == Mode::plain) return Status::failure("(iii) collapse", "closed graph sent entirely to edges");
      if (!is_nodeless_loop(m.target))
        return Status::failure("(iii') collapse", "closed graph collapses but target is not a nodeless loop");
    }
  }
  return {};
}

NewGraphMap identity_map(const Graph& g) {
  NewGraphMap m{g, g, std::vector<int>(g.num_arcs()), std::vector<int>(emb_poset(g).size())};
  std::iota(m.arcs.begin(), m.arcs.end(), 0);
  std::iota(m.classes.begin(), m.classes.end(), 0);
  return m;
}

NewGraphMap compose(const NewGraphMap& second, const NewGraphMap& first) {
  if (first.target != second.source) throw GraphError("compose: target of first is not source of second");
  NewGraphMap m{first.source, second.target, {}, {}};
  m.arcs.reserve(first.arcs.size());
  for (int a : first.arcs) m.arcs.push_back(second.arcs[a]);
  m.classes.reserve(first.classes.size());
  for (int c : first.classes) m.classes.push_back(second.classes[c]);
  return m;
}

ClassicalMap compose(const ClassicalMap& second, const ClassicalMap& first, Mode mode) {
  if (first.target != second.source) throw GraphError("compose: target of first is not source of second");
  NewGraphMap table = from_classical(second, mode);
  ClassicalMap m{first.source, second.target, {}, {}};
  for (int a : first.arcs) m.arcs.push_back(second.arcs[a]);
  for (int c : first.vertices) m.vertices.push_back(table.classes[c]);
  return m;
}

ClassicalMap to_classical(const NewGraphMap& m) {
  const EmbPoset& p = emb_poset(m.source);
  ClassicalMap c{m.source, m.target, m.arcs, {}};
  for (int v = 0; v < m.source.num_vertices(); ++v) c.vertices.push_back(m.classes[p.vertex_star(v)]);
  return c;
}

namespace {

// Pieces for the vertices of h, where h maps into m's source through f.
std::vector<Piece> pieces_through(const ClassicalMap& m, const GraphHom& f, std::vector<std::optional<GraphHom>>& reps) {
  const Graph& h = f.source;
  const EmbPoset& q = emb_poset(m.target);
  std::vector<Piece> out;
  for (int u = 0; u < h.num_vertices(); ++u) {
    int cls = m.vertices[f.vertices[u]];
    if (!reps[cls]) reps[cls] = q.representative(cls);
    const GraphHom& r = *reps[cls];
    Piece piece{r.source, {}};
    for (int d : h.nbhd(u)) {
      int want = m.arcs[f.arcs[h.dagger(d)]];
      int found = -1;
      for (int b : r.source.boundary())
        if (r.arcs[b] == want) found = b;
      if (found < 0) throw SubstitutionError("vertex image does not match the arc map");
      piece.match.emplace_back(d, found);
    }
    out.push_back(std::move(piece));
  }
  return out;
}

// Embedding of a substitution result into the target, assembled from the
// piece representatives and the arc map on the outer arcs.
GraphHom assemble(const Substitution& sub, const std::vector<Piece>& pieces, const std::vector<GraphHom*>& reps,
                  const std::vector<int>& outer_image, const Graph& target) {
  const Graph& k = sub.result;
  GraphHom e{k, target, std::vector<int>(k.num_arcs(), -1), std::vector<int>(k.num_vertices(), -1)};
  for (std::size_t v = 0; v < pieces.size(); ++v) {
    const GraphHom& into = sub.pieces[v];
    const GraphHom& rep = *reps[v];
    for (int c = 0; c < into.source.num_arcs(); ++c) e.arcs[into.arcs[c]] = rep.arcs[c];
    for (int u = 0; u < into.source.num_vertices(); ++u) e.vertices[into.vertices[u]] = rep.vertices[u];
  }
  for (std::size_t a = 0; a < outer_image.size(); ++a) {
    int x = sub.arc_of[a];
    if (e.arcs[x] >= 0 && e.arcs[x] != outer_image[a]) throw GraphError("substitution images disagree");
    e.arcs[x] = outer_image[a];
  }
  return e;
}

}  // namespace

NewGraphMap from_classical(const ClassicalMap& m, Mode mode) {
  const EmbPoset& p = emb_poset(m.source);
  const EmbPoset& q = emb_poset(m.target);
  std::vector<std::optional<GraphHom>> reps(q.size());
  NewGraphMap out{m.source, m.target, m.arcs, std::vector<int>(p.size())};
  for (int i = 0; i < p.size(); ++i) {
    GraphHom f = p.representative(i);
    std::vector<Piece> pieces = pieces_through(m, f, reps);
    Substitution sub = substitute(f.source, pieces, mode);
    std::vector<GraphHom*> piece_reps;
    for (int u = 0; u < f.source.num_vertices(); ++u) piece_reps.push_back(&*reps[m.vertices[f.vertices[u]]]);
    std::vector<int> outer(f.source.num_arcs());
    for (int a = 0; a < f.source.num_arcs(); ++a) outer[a] = m.arcs[f.arcs[a]];
    GraphHom e = assemble(sub, pieces, piece_reps, outer, m.target);
    auto idx = q.find(class_of(e));
    if (!idx) throw GraphError("from_classical: image is not an embedding class of the target");
    out.classes[i] = *idx;
  }
  return out;
}

std::optional<NewGraphMap> from_classical_by_keys(const ClassicalMap& m) {
  const EmbPoset& p = emb_poset(m.source);
  const EmbPoset& q = emb_poset(m.target);
  NewGraphMap out{m.source, m.target, m.arcs, std::vector<int>(p.size())};
  for (int i = 0; i < p.size(); ++i) {
    EmbClass key;
    for (int v : p.key(i).vertices) key.vertices = sorted_union(key.vertices, q.key(m.vertices[v]).vertices);
    bool inj = false;
    key.boundary = image_sorted(m.arcs, p.key(i).boundary, &inj);
    auto idx = q.find(key);
    if (!inj || !idx) return std::nullopt;
    out.classes[i] = *idx;
  }
  return out;
}

NewGraphMap from_embedding(const GraphHom& f) {
  const EmbPoset& p = emb_poset(f.source);
  const EmbPoset& q = emb_poset(f.target);
  NewGraphMap out{f.source, f.target, f.arcs, std::vector<int>(p.size())};
  for (int i = 0; i < p.size(); ++i) {
    EmbClass key;
    for (int v : p.key(i).vertices) key.vertices.push_back(f.vertices[v]);
    for (int a : p.key(i).boundary) key.boundary.push_back(f.arcs[a]);
    std::sort(key.vertices.begin(), key.vertices.end());
    std::sort(key.boundary.begin(), key.boundary.end());
    out.classes[i] = q.index_of(key);
  }
  return out;
}

MapKind classify(const NewGraphMap& m) {
  const EmbPoset& p = emb_poset(m.source);
  const EmbPoset& q = emb_poset(m.target);
  MapKind kind;
  kind.active = m.classes[p.top()] == q.top();
  GraphHom f{m.source, m.target, m.arcs, {}};
  bool stars = true;
  for (int v = 0; v < m.source.num_vertices() && stars; ++v) {
    int c = m.classes[p.vertex_star(v)];
    stars = q.is_vertex_star(c);
    if (stars) f.vertices.push_back(q.key(c).vertices[0]);
  }
  kind.inert = stars && check_embedding(f).ok();
  return kind;
}

Substitution substitute(const Graph& g, const std::vector<Piece>& pieces, Mode mode) {
  const int nv = g.num_vertices();
  if (static_cast<int>(pieces.size()) != nv) throw SubstitutionError("one piece per vertex is required");
  Substitution sub;
  if (nv == 0) {
    sub.result = g;
    sub.arc_of.resize(g.num_arcs());
    std::iota(sub.arc_of.begin(), sub.arc_of.end(), 0);
    return sub;
  }
  // matched[v][d] = boundary arc of piece v; dart_of[v][b] = dart of g.
  std::vector<std::map<int, int>> matched(nv);
  std::vector<std::map<int, int>> dart_of(nv);
  for (int v = 0; v < nv; ++v) {
    const Graph& h = pieces[v].graph;
    if (!is_connected(h)) throw SubstitutionError("piece for '" + g.vertex_name(v) + "' is not connected");
    std::vector<int> hb = h.boundary();
    if (pieces[v].match.size() != g.nbhd(v).size() || hb.size() != g.nbhd(v).size())
      throw SubstitutionError("arity mismatch at vertex '" + g.vertex_name(v) + "'");
    for (auto [d, b] : pieces[v].match) {
      if (d < 0 || d >= g.num_arcs() || g.attach(d) != v)
        throw SubstitutionError("match uses a dart not at '" + g.vertex_name(v) + "'");
      if (b < 0 || b >= h.num_arcs() || !h.in_boundary(b))
        throw SubstitutionError("match uses a non-boundary arc of the piece");
      if (matched[v].count(d) || dart_of[v].count(b)) throw SubstitutionError("match is not a bijection");
      matched[v][d] = b;
      dart_of[v][b] = d;
    }
  }

  // Result arcs: (-1, x) for boundary arcs x of g, (v, c) for non-boundary
  // arcs c of piece v.
  using Key = std::pair<int, int>;
  const int limit = 2 * g.num_arcs() + 2;
  bool collapsed = false;
  auto resolve = [&](int x) -> Key {
    for (int step = 0; step < limit; ++step) {
      if (!g.is_dart(x)) return {-1, x};
      int w = g.attach(x);
      const Graph& h = pieces[w].graph;
      int c = h.dagger(matched[w].at(x));
      if (!h.in_boundary(c)) return {w, c};
      x = g.dagger(dart_of[w].at(c));
    }
    collapsed = true;
    return {-2, -2};
  };

  std::vector<Key> arc_keys(g.num_arcs());
  for (int x = 0; x < g.num_arcs(); ++x) arc_keys[x] = resolve(x);

  if (collapsed) {
    if (mode == Mode::plain) throw SubstitutionError("substitution collapses to a nodeless loop");
    // Every piece is an edge and g is closed: follow the orbit of one dart.
    int start = g.darts().front();
    std::vector<int> side(g.num_arcs(), -1);
    int x = start;
    for (int step = 0; step < limit && side[x] < 0; ++step) {
      side[x] = 0;
      side[g.dagger(x)] = 1;
      int w = g.attach(x);
      const Graph& h = pieces[w].graph;
      x = g.dagger(dart_of[w].at(h.dagger(matched[w].at(x))));
    }
    for (int a = 0; a < g.num_arcs(); ++a)
      if (side[a] < 0) throw SubstitutionError("collapsed substitution is not a single loop");
    GraphSpec s;
    std::string n0 = g.arc_name(start);
    std::string n1 = g.arc_name(g.dagger(start));
    s.arcs = {n0, n1};
    s.involution = {{n0, n1}, {n1, n0}};
    s.boundary = std::vector<std::string>{};
    sub.result = Graph(s);
    const int i0 = sub.result.arc(n0);
    const int i1 = sub.result.arc(n1);
    for (int a = 0; a < g.num_arcs(); ++a) sub.arc_of.push_back(side[a] == 0 ? i0 : i1);
    for (int v = 0; v < nv; ++v) {
      const Graph& h = pieces[v].graph;
      GraphHom e{h, sub.result, std::vector<int>(h.num_arcs()), {}};
      for (auto [d, b] : pieces[v].match) e.arcs[b] = sub.arc_of[g.dagger(d)];
      sub.pieces.push_back(e);
    }
    return sub;
  }

  std::map<Key, std::string> names;
  NameAllocator alloc;
  for (int x = 0; x < g.num_arcs(); ++x) alloc.reserve(g.arc_name(x));
  for (int v = 0; v < nv; ++v)
    if (pieces[v].graph.num_vertices() == 1) alloc.reserve(g.vertex_name(v));
  for (int x = 0; x < g.num_arcs(); ++x) {
    if (!g.is_dart(x)) {
      names[{-1, x}] = g.arc_name(x);
      continue;
    }
    int w = g.attach(x);
    const Graph& h = pieces[w].graph;
    int c = h.dagger(matched[w].at(x));
    if (!h.in_boundary(c)) names[{w, c}] = g.arc_name(x);
  }
  for (int v = 0; v < nv; ++v) {
    const Graph& h = pieces[v].graph;
    for (int c = 0; c < h.num_arcs(); ++c)
      if (!h.in_boundary(c) && !names.count({v, c}))
        names[{v, c}] = alloc.fresh(g.vertex_name(v) + "." + h.arc_name(c));
  }
  auto vertex_name = [&](int v, int u) {
    const Graph& h = pieces[v].graph;
    return h.num_vertices() == 1 ? g.vertex_name(v) : g.vertex_name(v) + "." + h.vertex_name(u);
  };
  std::map<std::pair<int, int>, std::string> vnames;
  for (int v = 0; v < nv; ++v)
    for (int u = 0; u < pieces[v].graph.num_vertices(); ++u)
      vnames[{v, u}] = pieces[v].graph.num_vertices() == 1 ? vertex_name(v, u) : alloc.fresh(vertex_name(v, u));

  auto partner = [&](const Key& k) -> Key {
    if (k.first == -1) return resolve(g.dagger(k.second));
    const Graph& h = pieces[k.first].graph;
    int c = h.dagger(k.second);
    if (!h.in_boundary(c)) return {k.first, c};
    return resolve(g.dagger(dart_of[k.first].at(c)));
  };

  GraphSpec s;
  bool stray = false;
  std::vector<std::string> outer;
  for (const auto& [k, name] : names) {
    s.arcs.push_back(name);
    s.involution.emplace_back(name, names.at(partner(k)));
    if (k.first == -1) outer.push_back(name);
    if (k.first >= 0 && !pieces[k.first].graph.is_dart(k.second)) stray = true;
  }
  for (int v = 0; v < nv; ++v) {
    const Graph& h = pieces[v].graph;
    for (int u = 0; u < h.num_vertices(); ++u) {
      std::vector<std::string> ds;
      for (int c : h.nbhd(u)) ds.push_back(names.at({v, c}));
      s.vertices.push_back(vnames[{v, u}]);
      s.nbhd.emplace_back(vnames[{v, u}], ds);
    }
  }
  if (stray) s.boundary = outer;
  sub.result = Graph(s);
  const Graph& r = sub.result;
  for (int x = 0; x < g.num_arcs(); ++x) sub.arc_of.push_back(r.arc(names.at(arc_keys[x])));
  for (int v = 0; v < nv; ++v) {
    const Graph& h = pieces[v].graph;
    GraphHom e{h, r, std::vector<int>(h.num_arcs()), std::vector<int>(h.num_vertices())};
    for (int c = 0; c < h.num_arcs(); ++c) {
      if (h.in_boundary(c))
        e.arcs[c] = r.arc(names.at(resolve(g.dagger(dart_of[v].at(c)))));
      else
        e.arcs[c] = r.arc(names.at({v, c}));
    }
    for (int u = 0; u < h.num_vertices(); ++u) e.vertices[u] = r.vertex(vnames[{v, u}]);
    sub.pieces.push_back(e);
  }
  (void)mode;
  return sub;
}

std::vector<Piece> pieces_of(const ClassicalMap& m) {
  std::vector<std::optional<GraphHom>> reps(emb_poset(m.target).size());
  return pieces_through(m, identity_hom(m.source), reps);
}

Factorization factor_by_substitution(const NewGraphMap& m, Mode mode) {
  ClassicalMap c = to_classical(m);
  const EmbPoset& q = emb_poset(m.target);
  std::vector<std::optional<GraphHom>> reps(q.size());
  std::vector<Piece> pieces = pieces_through(c, identity_hom(m.source), reps);
  Substitution sub = substitute(m.source, pieces, mode);
  std::vector<GraphHom*> piece_reps;
  for (int v = 0; v < m.source.num_vertices(); ++v) piece_reps.push_back(&*reps[c.vertices[v]]);
  GraphHom e = assemble(sub, pieces, piece_reps, m.arcs, m.target);

  const Graph& k = sub.result;
  const EmbPoset& pk = emb_poset(k);
  ClassicalMap act{m.source, k, sub.arc_of, {}};
  for (int v = 0; v < m.source.num_vertices(); ++v) act.vertices.push_back(pk.index_of(class_of(sub.pieces[v])));
  return {from_classical(act, mode), from_embedding(e), k};
}

Factorization factor(const NewGraphMap& m, Mode mode) {
  if (classify(m).active) return {m, identity_map(m.target), m.target};
  return factor_by_substitution(m, mode);
}

Complement complement(const Graph& h, int emb_class, Mode mode) {
  if (is_nodeless_loop(h)) throw GraphError("complement: not defined inside a nodeless loop");
  const EmbPoset& p = emb_poset(h);
  const EmbClass& key = p.key(emb_class);
  NameAllocator alloc;
  for (int a = 0; a < h.num_arcs(); ++a) alloc.reserve(h.arc_name(a));
  for (int v = 0; v < h.num_vertices(); ++v) alloc.reserve(h.vertex_name(v));
  const std::string vg = alloc.fresh("vG");

  GraphSpec s;
  s.arcs = {};
  if (key.is_edge()) {
    const int a0 = key.boundary[0];
    const int a1 = key.boundary[1];
    const std::string d0 = alloc.fresh(h.arc_name(a0) + "~d");
    const std::string d1 = alloc.fresh(h.arc_name(a1) + "~d");
    for (int a = 0; a < h.num_arcs(); ++a) {
      s.arcs.push_back(h.arc_name(a));
      if (a == a0)
        s.involution.emplace_back(h.arc_name(a), d0);
      else if (a == a1)
        s.involution.emplace_back(h.arc_name(a), d1);
      else
        s.involution.emplace_back(h.arc_name(a), h.arc_name(h.dagger(a)));
    }
    s.arcs.push_back(d0);
    s.arcs.push_back(d1);
    s.involution.emplace_back(d0, h.arc_name(a0));
    s.involution.emplace_back(d1, h.arc_name(a1));
    for (int v = 0; v < h.num_vertices(); ++v) {
      std::vector<std::string> ds;
      for (int d : h.nbhd(v)) ds.push_back(h.arc_name(d));
      s.vertices.push_back(h.vertex_name(v));
      s.nbhd.emplace_back(h.vertex_name(v), ds);
    }
    s.vertices.push_back(vg);
    s.nbhd.emplace_back(vg, std::vector<std::string>{d0, d1});
  } else {
    const ClassInfo& info = p.info(emb_class);
    auto in_s = [&](int v) { return std::binary_search(key.vertices.begin(), key.vertices.end(), v); };
    std::set<int> removed;
    for (int e = 0; e < h.num_edges(); ++e) {
      const Edge& ed = h.edges()[e];
      bool inner = h.is_dart(ed.first) && h.is_dart(ed.second) && in_s(h.attach(ed.first)) &&
                   in_s(h.attach(ed.second));
      if (inner && !std::binary_search(info.cut_edges.begin(), info.cut_edges.end(), e)) {
        removed.insert(ed.first);
        removed.insert(ed.second);
      }
    }
    for (int a = 0; a < h.num_arcs(); ++a) {
      if (removed.count(a)) continue;
      s.arcs.push_back(h.arc_name(a));
      s.involution.emplace_back(h.arc_name(a), h.arc_name(h.dagger(a)));
    }
    std::vector<std::string> at_vg;
    for (int v = 0; v < h.num_vertices(); ++v) {
      std::vector<std::string> ds;
      for (int d : h.nbhd(v))
        if (!removed.count(d)) ds.push_back(h.arc_name(d));
      if (in_s(v)) {
        at_vg.insert(at_vg.end(), ds.begin(), ds.end());
        continue;
      }
      s.vertices.push_back(h.vertex_name(v));
      s.nbhd.emplace_back(h.vertex_name(v), ds);
    }
    s.vertices.push_back(vg);
    s.nbhd.emplace_back(vg, at_vg);
  }
  if (h.boundary_explicit()) {
    std::vector<std::string> b;
    for (int a : h.boundary()) b.push_back(h.arc_name(a));
    s.boundary = b;
  }
  Graph k(s);
  ClassicalMap alpha{k, h, std::vector<int>(k.num_arcs()), std::vector<int>(k.num_vertices())};
  for (int a = 0; a < k.num_arcs(); ++a) {
    auto in_h = h.find_arc(k.arc_name(a));
    alpha.arcs[a] = in_h ? *in_h : -1;
  }
  for (int a = 0; a < k.num_arcs(); ++a)
    if (alpha.arcs[a] < 0) alpha.arcs[a] = h.dagger(alpha.arcs[k.dagger(a)]);
  const int collapsed = k.vertex(vg);
  for (int v = 0; v < k.num_vertices(); ++v)
    alpha.vertices[v] = v == collapsed ? emb_class : p.vertex_star(h.vertex(k.vertex_name(v)));
  return {k, collapsed, from_classical(alpha, mode)};
}

namespace {

void check_caps(const Graph& g, EnumerationCaps caps) {
  if (g.num_vertices() > caps.max_vertices || g.num_arcs() > caps.max_arcs)
    throw CapExceeded("graph exceeds enumeration caps (" + std::to_string(caps.max_vertices) + " vertices, " +
                      std::to_string(caps.max_arcs) + " arcs)");
}

void check_objects(const Graph& s, const Graph& t, Mode mode, EnumerationCaps caps) {
  check_caps(s, caps);
  check_caps(t, caps);
  if (Status st = check_object(s, mode); !st) throw GraphError("source: " + st.message());
  if (Status st = check_object(t, mode); !st) throw GraphError("target: " + st.message());
}

// Calls visit(arcs) for every involutive arc function, built edge by edge.
// prune(arcs, assigned_edges) may cut a branch after each edge.
template <class Prune, class Visit>
void for_each_arc_function(const Graph& s, const Graph& t, Prune prune, Visit visit) {
  std::vector<int> arcs(s.num_arcs(), -1);
  const int ne = s.num_edges();
  auto rec = [&](auto&& self, int e) -> void {
    if (e == ne) {
      visit(arcs);
      return;
    }
    const Edge& ed = s.edges()[e];
    for (int x = 0; x < t.num_arcs(); ++x) {
      arcs[ed.first] = x;
      arcs[ed.second] = t.dagger(x);
      if (prune(arcs, e + 1)) self(self, e + 1);
    }
    arcs[ed.first] = arcs[ed.second] = -1;
  };
  rec(rec, 0);
}

}  // namespace

std::vector<ClassicalMap> enumerate_classical_maps(const Graph& source, const Graph& target, Mode mode,
                                                   EnumerationCaps caps) {
  check_objects(source, target, mode, caps);
  const Graph& g = source;
  const EmbPoset& q = emb_poset(target);
  const int nv = g.num_vertices();
  // A vertex is decided once every edge through it has an image.
  std::vector<int> ready_after(nv, 0);
  for (int v = 0; v < nv; ++v)
    for (int d : g.nbhd(v)) ready_after[v] = std::max(ready_after[v], g.edge_of(d) + 1);

  std::vector<std::vector<int>> candidates(nv);
  auto vertex_candidates = [&](const std::vector<int>& arcs, int v) {
    std::vector<int> opp;
    for (int d : g.nbhd(v)) opp.push_back(g.dagger(d));
    bool inj = false;
    auto img = image_sorted(arcs, opp, &inj);
    return inj ? q.classes_with_boundary(img) : std::vector<int>{};
  };
  std::vector<ClassicalMap> out;
  auto prune = [&](const std::vector<int>& arcs, int assigned) {
    for (int v = 0; v < nv; ++v)
      if (ready_after[v] == assigned && vertex_candidates(arcs, v).empty()) return false;
    return true;
  };
  const bool closed = g.boundary().empty();
  auto visit = [&](const std::vector<int>& arcs) {
    for (int v = 0; v < nv; ++v) {
      candidates[v] = vertex_candidates(arcs, v);
      if (candidates[v].empty()) return;
    }
    std::vector<int> choice(nv);
    std::vector<int> used(target.num_vertices(), 0);
    auto rec = [&](auto&& self, int v) -> void {
      if (v == nv) {
        if (closed) {
          bool all_edges = true;
          for (int c : choice) all_edges = all_edges && q.is_edge(c);
          if (all_edges && (mode == Mode::plain || !is_nodeless_loop(target))) return;
        }
        out.push_back({source, target, arcs, choice});
        return;
      }
      for (int c : candidates[v]) {
        const auto& vs = q.key(c).vertices;
        bool clash = false;
        for (int w : vs) clash = clash || used[w];
        if (clash) continue;
        for (int w : vs) used[w] = 1;
        choice[v] = c;
        self(self, v + 1);
        for (int w : vs) used[w] = 0;
      }
    };
    rec(rec, 0);
  };
  for_each_arc_function(g, target, prune, visit);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NewGraphMap> enumerate_maps(const Graph& source, const Graph& target, Mode mode, EnumerationCaps caps) {
  std::vector<NewGraphMap> out;
  for (const ClassicalMap& c : enumerate_classical_maps(source, target, mode, caps))
    out.push_back(from_classical(c, mode));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NewGraphMap> enumerate_maps_by_tables(const Graph& source, const Graph& target, Mode mode,
                                                  EnumerationCaps caps) {
  check_objects(source, target, mode, caps);
  const EmbPoset& p = emb_poset(source);
  const EmbPoset& q = emb_poset(target);
  const int n = p.size();
  std::vector<int> ready_after(n, 0);
  for (int i = 0; i < n; ++i)
    for (int a : p.key(i).boundary) ready_after[i] = std::max(ready_after[i], source.edge_of(a) + 1);
  auto class_candidates = [&](const std::vector<int>& arcs, int i) {
    bool inj = false;
    auto img = image_sorted(arcs, p.key(i).boundary, &inj);
    std::vector<int> out;
    if (!inj) return out;
    for (int c : q.classes_with_boundary(img))
      if (!p.is_edge(i) || q.is_edge(c)) out.push_back(c);
    return out;
  };
  auto prune = [&](const std::vector<int>& arcs, int assigned) {
    for (int i = 0; i < n; ++i)
      if (ready_after[i] == assigned && class_candidates(arcs, i).empty()) return false;
    return true;
  };
  std::vector<NewGraphMap> out;
  auto visit = [&](const std::vector<int>& arcs) {
    std::vector<std::vector<int>> cand(n);
    for (int i = 0; i < n; ++i) {
      cand[i] = class_candidates(arcs, i);
      if (cand[i].empty()) return;
    }
    NewGraphMap m{source, target, arcs, std::vector<int>(n)};
    auto rec = [&](auto&& self, int i) -> void {
      if (i == n) {
        if (check_new_map(m, mode)) out.push_back(m);
        return;
      }
      for (int c : cand[i]) {
        m.classes[i] = c;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  };
  for_each_arc_function(source, target, prune, visit);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace graphcat
