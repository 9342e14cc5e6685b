#include "graphcat/directed.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace graphcat {

namespace {

std::vector<int> with_sign(const Orientation& x, const std::vector<int>& arcs, int s) {
  std::vector<int> out;
  for (int a : arcs)
    if (x.sign[a] == s) out.push_back(a);
  return out;
}

std::multiset<int> edges_of_arcs(const Graph& g, const std::vector<int>& arcs) {
  std::multiset<int> out;
  for (int a : arcs) out.insert(g.edge_of(a));
  return out;
}

// Vertex an edge enters (its negative dart) and leaves (its positive dart).
struct Ends {
  int head = -1;
  int tail = -1;
};

std::vector<Ends> edge_ends(const DirectedGraph& g) {
  const Graph& gr = g.graph;
  std::vector<Ends> out(gr.num_edges());
  for (int a = 0; a < gr.num_arcs(); ++a) {
    if (!gr.is_dart(a)) continue;
    if (g.orientation.sign[a] < 0)
      out[gr.edge_of(a)].head = gr.attach(a);
    else
      out[gr.edge_of(a)].tail = gr.attach(a);
  }
  return out;
}

bool injective_class(const EmbPoset& p, int c) { return p.is_edge(c) || p.info(c).cut_edges.empty(); }

}  // namespace

Status check_orientation(const Graph& g, const Orientation& x) {
  if (static_cast<int>(x.sign.size()) != g.num_arcs()) return Status::failure("orientation-total", "one sign per arc");
  for (int a = 0; a < g.num_arcs(); ++a) {
    if (x.sign[a] != 1 && x.sign[a] != -1) return Status::failure("orientation-sign", "signs are +1 or -1");
    if (x.sign[g.dagger(a)] != -x.sign[a])
      return Status::failure("orientation-involutive", "arc " + g.arc_name(a) + " has the sign of its partner");
  }
  return {};
}

Orientation orientation_from_edges(const Graph& g, const std::vector<int>& first_arc_sign) {
  if (static_cast<int>(first_arc_sign.size()) != g.num_edges()) throw GraphError("orientation: one sign per edge");
  Orientation x{std::vector<int>(g.num_arcs(), 0)};
  for (int e = 0; e < g.num_edges(); ++e) {
    x.sign[g.edges()[e].first] = first_arc_sign[e];
    x.sign[g.edges()[e].second] = -first_arc_sign[e];
  }
  return x;
}

Orientation orientation_by_names(const Graph& g, const std::vector<std::string>& plus) {
  Orientation x{std::vector<int>(g.num_arcs(), 0)};
  for (const std::string& n : plus) {
    int a = g.arc(n);
    x.sign[a] = 1;
    x.sign[g.dagger(a)] = -1;
  }
  for (int s : x.sign)
    if (s == 0) throw GraphError("orientation: some edge has no named positive arc");
  if (Status st = check_orientation(g, x); !st) throw GraphError("orientation: " + st.message());
  return x;
}

std::vector<Orientation> orientations_of(const Graph& g) {
  const int ne = g.num_edges();
  if (ne > 20) throw CapExceeded("orientations: too many edges");
  std::vector<Orientation> out;
  for (unsigned bits = 0; bits < (1u << ne); ++bits) {
    std::vector<int> s(ne);
    // Most significant bit first so the list is sorted by sign vector.
    for (int e = 0; e < ne; ++e) s[e] = ((bits >> (ne - 1 - e)) & 1u) ? 1 : -1;
    out.push_back(orientation_from_edges(g, s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Orientation restrict_orientation(const NewGraphMap& m, const Orientation& target) {
  Orientation x;
  x.sign.reserve(m.arcs.size());
  for (int a : m.arcs) x.sign.push_back(target.sign[a]);
  return x;
}

std::vector<int> inputs_of_vertex(const DirectedGraph& g, int v) { return with_sign(g.orientation, g.graph.nbhd(v), -1); }
std::vector<int> outputs_of_vertex(const DirectedGraph& g, int v) { return with_sign(g.orientation, g.graph.nbhd(v), 1); }
std::vector<int> graph_inputs(const DirectedGraph& g) { return with_sign(g.orientation, g.graph.boundary(), 1); }
std::vector<int> graph_outputs(const DirectedGraph& g) { return with_sign(g.orientation, g.graph.boundary(), -1); }

std::vector<int> class_inputs(const DirectedGraph& g, int emb_class) {
  return with_sign(g.orientation, emb_poset(g.graph).key(emb_class).boundary, 1);
}
std::vector<int> class_outputs(const DirectedGraph& g, int emb_class) {
  return with_sign(g.orientation, emb_poset(g.graph).key(emb_class).boundary, -1);
}

Status check_oriented_map(const NewGraphMap& m, const Orientation& source, const Orientation& target, Mode mode) {
  if (Status st = check_new_map(m, mode); !st) return st;
  if (Status st = check_orientation(m.source, source); !st) return Status::failure("source-orientation", st.message());
  if (Status st = check_orientation(m.target, target); !st) return Status::failure("target-orientation", st.message());
  for (int a = 0; a < m.source.num_arcs(); ++a)
    if (source.sign[a] != target.sign[m.arcs[a]])
      return Status::failure("signs", "arc " + m.source.arc_name(a) + " changes sign");
  DirectedGraph s{m.source, source};
  DirectedGraph t{m.target, target};
  const EmbPoset& p = emb_poset(m.source);
  auto push = [&](const std::vector<int>& arcs) {
    std::multiset<int> out;
    for (int a : arcs) out.insert(m.target.edge_of(m.arcs[a]));
    return out;
  };
  for (int c = 0; c < p.size(); ++c) {
    if (push(class_inputs(s, c)) != edges_of_arcs(m.target, class_inputs(t, m.classes[c])))
      return Status::failure("(iv') inputs", "class inputs are not carried to image inputs");
    if (push(class_outputs(s, c)) != edges_of_arcs(m.target, class_outputs(t, m.classes[c])))
      return Status::failure("(iv') outputs", "class outputs are not carried to image outputs");
  }
  return {};
}

std::vector<NewGraphMap> enumerate_oriented_maps(const DirectedGraph& source, const DirectedGraph& target, Mode mode,
                                                 EnumerationCaps caps) {
  std::vector<NewGraphMap> out;
  for (NewGraphMap& m : enumerate_maps(source.graph, target.graph, mode, caps))
    if (restrict_orientation(m, target.orientation) == source.orientation) out.push_back(std::move(m));
  return out;
}

bool is_linear(const DirectedGraph& g) {
  if (!is_connected(g.graph) || is_nodeless_loop(g.graph)) return false;
  for (int v = 0; v < g.graph.num_vertices(); ++v)
    if (inputs_of_vertex(g, v).size() != 1 || outputs_of_vertex(g, v).size() != 1) return false;
  return graph_inputs(g).size() == 1 && graph_outputs(g).size() == 1;
}

bool is_acyclic(const DirectedGraph& g) {
  if (!is_connected(g.graph) || is_nodeless_loop(g.graph)) return false;
  const int nv = g.graph.num_vertices();
  // Vertex digraph: v -> w along an edge leaving v and entering w.
  std::vector<std::vector<int>> next(nv);
  for (const Ends& e : edge_ends(g))
    if (e.head >= 0 && e.tail >= 0) next[e.tail].push_back(e.head);
  std::vector<int> state(nv, 0);
  bool cycle = false;
  auto dfs = [&](auto&& self, int v) -> void {
    state[v] = 1;
    for (int w : next[v]) {
      if (state[w] == 1) cycle = true;
      if (state[w] == 0) self(self, w);
    }
    state[v] = 2;
  };
  for (int v = 0; v < nv; ++v)
    if (state[v] == 0) dfs(dfs, v);
  return !cycle;
}

bool is_dendroidal(const DirectedGraph& g) {
  if (!is_connected(g.graph) || is_nodeless_loop(g.graph)) return false;
  const EmbPoset& p = emb_poset(g.graph);
  for (int c = 0; c < p.size(); ++c)
    if (class_outputs(g, c).size() != 1) return false;
  return true;
}

bool is_structured(const DirectedGraph& g, int emb_class) {
  const EmbPoset& p = emb_poset(g.graph);
  if (!injective_class(p, emb_class)) return false;
  if (p.is_edge(emb_class)) return true;
  const auto& s = p.key(emb_class).vertices;
  auto in_s = [&](int v) { return std::binary_search(s.begin(), s.end(), v); };
  const std::vector<Ends> ends = edge_ends(g);
  const int nv = g.graph.num_vertices();
  // Vertices reachable forward from the subgraph's edges, and backward.
  auto reach = [&](bool forward) {
    std::vector<char> seen(nv, 0);
    std::vector<int> stack;
    for (int e : p.info(emb_class).edges) {
      int w = forward ? ends[e].head : ends[e].tail;
      if (w >= 0 && !seen[w]) seen[w] = 1, stack.push_back(w);
    }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int d : g.graph.nbhd(v)) {
        if ((g.orientation.sign[d] > 0) != forward) continue;
        const Ends& en = ends[g.graph.edge_of(d)];
        int w = forward ? en.head : en.tail;
        if (w >= 0 && !seen[w]) seen[w] = 1, stack.push_back(w);
      }
    }
    return seen;
  };
  std::vector<char> fwd = reach(true);
  std::vector<char> bwd = reach(false);
  for (int v = 0; v < nv; ++v)
    if (!in_s(v) && fwd[v] && bwd[v]) return false;
  return true;
}

std::vector<int> structured_subgraphs(const DirectedGraph& g) {
  if (!is_acyclic(g)) throw GraphError("structured subgraphs: graph is not acyclic");
  const EmbPoset& p = emb_poset(g.graph);
  std::vector<int> out;
  for (int c = 0; c < p.size(); ++c)
    if (is_structured(g, c)) out.push_back(c);
  return out;
}

std::optional<int> structured_union(const DirectedGraph& g, int h, int k) {
  const EmbPoset& p = emb_poset(g.graph);
  std::vector<int> verts;
  std::set_union(p.key(h).vertices.begin(), p.key(h).vertices.end(), p.key(k).vertices.begin(),
                 p.key(k).vertices.end(), std::back_inserter(verts));
  std::set<int> edges(p.info(h).edges.begin(), p.info(h).edges.end());
  edges.insert(p.info(k).edges.begin(), p.info(k).edges.end());
  std::optional<int> c;
  if (verts.empty()) {
    if (edges.size() != 1) return std::nullopt;
    c = p.edge_class(*edges.begin());
  } else {
    // The subgraph on verts with no cut edges, if it is connected.
    for (int i = 0; i < p.size() && !c; ++i)
      if (p.key(i).vertices == verts && p.info(i).cut_edges.empty()) c = i;
    if (!c) return std::nullopt;
    const auto& ce = p.info(*c).edges;
    if (std::set<int>(ce.begin(), ce.end()) != edges) return std::nullopt;
  }
  if (!is_structured(g, *c)) return std::nullopt;
  return c;
}

Status check_properadic(const NewGraphMap& m, const Orientation& source, const Orientation& target) {
  if (Status st = check_oriented_map(m, source, target, Mode::plain); !st) return Status::failure("oriented", st.message());
  DirectedGraph s{m.source, source};
  DirectedGraph t{m.target, target};
  if (!is_acyclic(s)) return Status::failure("source-acyclic", "source has a directed cycle");
  if (!is_acyclic(t)) return Status::failure("target-acyclic", "target has a directed cycle");
  if (!is_structured(t, m.classes[emb_poset(m.source).top()]))
    return Status::failure("image not structured", "the image of the source is not a structured subgraph");
  return {};
}

bool is_properadic(const NewGraphMap& m, const Orientation& source, const Orientation& target) {
  return check_properadic(m, source, target).ok();
}

bool is_dioperadic(const NewGraphMap& m, const Orientation& source, const Orientation& target) {
  return is_tree(m.source) && is_tree(m.target) && is_properadic(m, source, target);
}

ProperadicMap properadic_restriction(const NewGraphMap& m, const Orientation& source, const Orientation& target) {
  if (Status st = check_properadic(m, source, target); !st) throw GraphError("properadic restriction: " + st.message());
  DirectedGraph s{m.source, source};
  DirectedGraph t{m.target, target};
  ProperadicMap out;
  for (int e = 0; e < m.source.num_edges(); ++e) out.edges.push_back(m.target.edge_of(m.arcs[m.source.edges()[e].first]));
  out.structured = structured_subgraphs(s);
  for (int c : out.structured) {
    int img = m.classes[c];
    if (!is_structured(t, img)) throw GraphError("properadic restriction: a structured subgraph leaves sSb");
    out.table.push_back(img);
  }
  auto edge_image = [&](const std::vector<int>& arcs) {
    std::multiset<int> r;
    for (int a : arcs) r.insert(out.edges[m.source.edge_of(a)]);
    return r;
  };
  std::map<int, int> index;
  for (std::size_t i = 0; i < out.structured.size(); ++i) index[out.structured[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < out.structured.size(); ++i) {
    int c = out.structured[i];
    if (edge_image(class_inputs(s, c)) != edges_of_arcs(m.target, class_inputs(t, out.table[i])) ||
        edge_image(class_outputs(s, c)) != edges_of_arcs(m.target, class_outputs(t, out.table[i])))
      throw GraphError("properadic restriction: inputs or outputs not preserved");
  }
  for (int h : out.structured)
    for (int k : out.structured) {
      auto u = structured_union(s, h, k);
      if (!u) continue;
      auto v = structured_union(t, m.classes[h], m.classes[k]);
      if (!v || *v != m.classes[*u]) throw GraphError("properadic restriction: a structured union is not preserved");
    }
  return out;
}

Status check_four_set(const FourSetGraph& k) {
  const int ne = static_cast<int>(k.edges.size());
  const int nv = static_cast<int>(k.vertices.size());
  std::vector<int> as_input(ne, 0);
  std::vector<int> as_output(ne, 0);
  for (auto [e, v] : k.inputs) {
    if (e < 0 || e >= ne || v < 0 || v >= nv) return Status::failure("incidence", "input incidence out of range");
    ++as_input[e];
  }
  for (auto [e, v] : k.outputs) {
    if (e < 0 || e >= ne || v < 0 || v >= nv) return Status::failure("incidence", "output incidence out of range");
    ++as_output[e];
  }
  for (int e = 0; e < ne; ++e)
    if (as_input[e] > 1 || as_output[e] > 1)
      return Status::failure("incidence", "edge " + k.edges[e] + " is an input or output twice");
  std::vector<char> gin(ne, 0);
  std::vector<char> gout(ne, 0);
  for (int e : k.graph_inputs) {
    if (e < 0 || e >= ne) return Status::failure("graph-inputs", "out of range");
    gin[e] = 1;
  }
  for (int e : k.graph_outputs) {
    if (e < 0 || e >= ne) return Status::failure("graph-outputs", "out of range");
    gout[e] = 1;
  }
  for (int e = 0; e < ne; ++e) {
    bool in_i = as_input[e] > 0;
    bool in_o = as_output[e] > 0;
    if (in_i && !in_o && !gin[e]) return Status::failure("graph-inputs-lower", k.edges[e]);
    if (gin[e] && in_o) return Status::failure("graph-inputs-upper", k.edges[e]);
    if (in_o && !in_i && !gout[e]) return Status::failure("graph-outputs-lower", k.edges[e]);
    if (gout[e] && in_i) return Status::failure("graph-outputs-upper", k.edges[e]);
    if ((gin[e] && !in_i) != (gout[e] && !in_o)) return Status::failure("free-edges", k.edges[e]);
  }
  return {};
}

std::vector<int> loop_edges(const FourSetGraph& k) {
  std::vector<char> used(k.edges.size(), 0);
  for (auto [e, v] : k.inputs) used[e] = 1;
  for (auto [e, v] : k.outputs) used[e] = 1;
  for (int e : k.graph_inputs) used[e] = 1;
  for (int e : k.graph_outputs) used[e] = 1;
  std::vector<int> out;
  for (std::size_t e = 0; e < used.size(); ++e)
    if (!used[e]) out.push_back(static_cast<int>(e));
  return out;
}

FourSetGraph to_four_set(const DirectedGraph& g) {
  const Graph& gr = g.graph;
  if (Status st = check_orientation(gr, g.orientation); !st) throw GraphError("to_four_set: " + st.message());
  FourSetGraph k;
  std::vector<int> plus_arc(gr.num_edges());
  for (int a = 0; a < gr.num_arcs(); ++a)
    if (g.orientation.sign[a] > 0) plus_arc[gr.edge_of(a)] = a;
  // Edges ordered by the name of their positive arc.
  std::vector<int> order(gr.num_edges());
  for (int e = 0; e < gr.num_edges(); ++e) order[e] = e;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return gr.arc_name(plus_arc[x]) < gr.arc_name(plus_arc[y]); });
  std::vector<int> slot(gr.num_edges());
  for (int i = 0; i < gr.num_edges(); ++i) {
    slot[order[i]] = i;
    k.edges.push_back(gr.arc_name(plus_arc[order[i]]));
  }
  for (int v = 0; v < gr.num_vertices(); ++v) k.vertices.push_back(gr.vertex_name(v));
  for (int a = 0; a < gr.num_arcs(); ++a) {
    if (!gr.is_dart(a)) continue;
    auto inc = std::make_pair(slot[gr.edge_of(a)], gr.attach(a));
    (g.orientation.sign[a] < 0 ? k.inputs : k.outputs).push_back(inc);
  }
  std::sort(k.inputs.begin(), k.inputs.end());
  std::sort(k.outputs.begin(), k.outputs.end());
  for (int a : graph_inputs(g)) k.graph_inputs.push_back(slot[gr.edge_of(a)]);
  for (int a : graph_outputs(g)) k.graph_outputs.push_back(slot[gr.edge_of(a)]);
  std::sort(k.graph_inputs.begin(), k.graph_inputs.end());
  std::sort(k.graph_outputs.begin(), k.graph_outputs.end());
  return k;
}

DirectedGraph from_four_set(const FourSetGraph& k) {
  if (Status st = check_four_set(k); !st) throw GraphError("from_four_set: " + st.message());
  GraphSpec s;
  const int ne = static_cast<int>(k.edges.size());
  std::vector<std::string> plus(ne);
  std::vector<std::string> minus(ne);
  for (int e = 0; e < ne; ++e) {
    plus[e] = k.edges[e];
    minus[e] = k.edges[e] + "-";
    s.arcs.push_back(plus[e]);
    s.arcs.push_back(minus[e]);
    s.involution.emplace_back(plus[e], minus[e]);
    s.involution.emplace_back(minus[e], plus[e]);
  }
  s.vertices = k.vertices;
  for (const std::string& v : k.vertices) s.nbhd.emplace_back(v, std::vector<std::string>{});
  for (auto [e, v] : k.inputs) s.nbhd[v].second.push_back(minus[e]);
  for (auto [e, v] : k.outputs) s.nbhd[v].second.push_back(plus[e]);
  std::vector<std::string> boundary;
  for (int e : k.graph_inputs) boundary.push_back(plus[e]);
  for (int e : k.graph_outputs) boundary.push_back(minus[e]);
  if (!loop_edges(k).empty()) s.boundary = boundary;
  Graph g(s);
  std::vector<std::string> pos(plus.begin(), plus.end());
  return {g, orientation_by_names(g, pos)};
}

Status check_p_map(const FourSetGraph& g, const FourSetGraph& h, const std::vector<int>& edges,
                   const std::vector<int>& vertices) {
  if (edges.size() != g.edges.size() || vertices.size() != g.vertices.size())
    return Status::failure("p-map-total", "edge and vertex maps must be total");
  for (int e : edges)
    if (e < 0 || e >= static_cast<int>(h.edges.size())) return Status::failure("p-map-total", "edge out of range");
  for (int v : vertices)
    if (v < 0 || v >= static_cast<int>(h.vertices.size())) return Status::failure("p-map-total", "vertex out of range");
  auto check_side = [&](const auto& gs, const auto& hs, const char* what) -> Status {
    std::set<std::pair<int, int>> hset(hs.begin(), hs.end());
    for (auto [e, v] : gs)
      if (!hset.count({edges[e], vertices[v]})) return Status::failure("p-map-natural", what);
    // Pullback: at each source vertex the incidences biject with those at its image.
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      std::multiset<int> img;
      for (auto [e, w] : gs)
        if (w == static_cast<int>(v)) img.insert(edges[e]);
      std::multiset<int> want;
      for (auto [e, w] : hs)
        if (w == vertices[v]) want.insert(e);
      if (img != want) return Status::failure("p-map-pullback", what);
    }
    return {};
  };
  if (Status st = check_side(g.inputs, h.inputs, "inputs"); !st) return st;
  if (Status st = check_side(g.outputs, h.outputs, "outputs"); !st) return st;
  std::vector<int> hl = loop_edges(h);
  for (int e : loop_edges(g))
    if (!std::binary_search(hl.begin(), hl.end(), edges[e]))
      return Status::failure("p-map-loops", "a loop edge leaves the loop edges");
  return {};
}

}  // namespace graphcat
