#include "graphcat/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace graphcat {

namespace detail {

struct GraphData {
  std::vector<std::string> arc_names;
  std::vector<std::string> vertex_names;
  std::unordered_map<std::string, int> arc_index;
  std::unordered_map<std::string, int> vertex_index;
  std::vector<int> dagger;
  std::vector<int> attach;
  std::vector<std::vector<int>> nbhd;
  std::vector<char> boundary;
  bool boundary_explicit = false;
  std::vector<std::string> issues;
  std::vector<Edge> edges;
  std::vector<int> edge_of;
  EmbCache emb;
};

}  // namespace detail

namespace {

std::vector<std::string> sorted_unique(const std::vector<std::string>& names, const char* what) {
  std::vector<std::string> out = names;
  std::sort(out.begin(), out.end());
  auto dup = std::adjacent_find(out.begin(), out.end());
  if (dup != out.end()) throw GraphError(std::string("duplicate ") + what + " '" + *dup + "'");
  return out;
}

}  // namespace

Graph::Graph() : data_(std::make_shared<detail::GraphData>()) {}

Graph::Graph(const GraphSpec& spec) : data_(std::make_shared<detail::GraphData>()) {
  auto& d = *data_;
  d.arc_names = sorted_unique(spec.arcs, "arc");
  d.vertex_names = sorted_unique(spec.vertices, "vertex");
  for (std::size_t i = 0; i < d.arc_names.size(); ++i) d.arc_index[d.arc_names[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < d.vertex_names.size(); ++i)
    d.vertex_index[d.vertex_names[i]] = static_cast<int>(i);

  const int na = static_cast<int>(d.arc_names.size());
  d.dagger.assign(na, -1);
  d.attach.assign(na, -1);
  d.nbhd.assign(d.vertex_names.size(), {});
  d.boundary.assign(na, 0);

  for (const auto& [from, to] : spec.involution) {
    int a = arc(from);
    int b = arc(to);
    if (d.dagger[a] != -1) {
      d.issues.push_back("involution lists arc '" + from + "' more than once");
      continue;
    }
    d.dagger[a] = b;
  }
  std::set<std::string> seen_vertex;
  for (const auto& [vname, arcs] : spec.nbhd) {
    int v = vertex(vname);
    if (!seen_vertex.insert(vname).second) throw GraphError("neighbourhood of '" + vname + "' given twice");
    for (const auto& aname : arcs) {
      int a = arc(aname);
      if (d.attach[a] != -1) {
        d.issues.push_back("dart '" + aname + "' is attached to more than one vertex");
        continue;
      }
      d.attach[a] = v;
      d.nbhd[v].push_back(a);
    }
    std::sort(d.nbhd[v].begin(), d.nbhd[v].end());
  }
  if (spec.boundary) {
    d.boundary_explicit = true;
    for (const auto& aname : *spec.boundary) {
      int a = arc(aname);
      if (d.boundary[a]) throw GraphError("boundary lists arc '" + aname + "' twice");
      d.boundary[a] = 1;
    }
  } else {
    for (int a = 0; a < na; ++a) d.boundary[a] = d.attach[a] == -1;
  }

  bool involution_ok = true;
  for (int a = 0; a < na; ++a) {
    int b = d.dagger[a];
    if (b < 0 || b == a || d.dagger[b] != a) involution_ok = false;
  }
  d.edge_of.assign(na, -1);
  if (involution_ok) {
    for (int a = 0; a < na; ++a) {
      if (a < d.dagger[a]) {
        d.edge_of[a] = d.edge_of[d.dagger[a]] = static_cast<int>(d.edges.size());
        d.edges.push_back({a, d.dagger[a]});
      }
    }
  }
}

int Graph::num_arcs() const { return static_cast<int>(data_->arc_names.size()); }
int Graph::num_vertices() const { return static_cast<int>(data_->vertex_names.size()); }
int Graph::num_edges() const { return static_cast<int>(data_->edges.size()); }
const std::string& Graph::arc_name(int a) const { return data_->arc_names.at(a); }
const std::string& Graph::vertex_name(int v) const { return data_->vertex_names.at(v); }

std::optional<int> Graph::find_arc(const std::string& name) const {
  auto it = data_->arc_index.find(name);
  if (it == data_->arc_index.end()) return std::nullopt;
  return it->second;
}
std::optional<int> Graph::find_vertex(const std::string& name) const {
  auto it = data_->vertex_index.find(name);
  if (it == data_->vertex_index.end()) return std::nullopt;
  return it->second;
}
int Graph::arc(const std::string& name) const {
  auto a = find_arc(name);
  if (!a) throw GraphError("unknown arc '" + name + "'");
  return *a;
}
int Graph::vertex(const std::string& name) const {
  auto v = find_vertex(name);
  if (!v) throw GraphError("unknown vertex '" + name + "'");
  return *v;
}

int Graph::dagger(int a) const { return data_->dagger[a]; }
bool Graph::is_dart(int a) const { return data_->attach[a] != -1; }
int Graph::attach(int a) const { return data_->attach[a]; }
const std::vector<int>& Graph::nbhd(int v) const { return data_->nbhd[v]; }
bool Graph::in_boundary(int a) const { return data_->boundary[a] != 0; }
bool Graph::boundary_explicit() const { return data_->boundary_explicit; }

std::vector<int> Graph::boundary() const {
  std::vector<int> out;
  for (int a = 0; a < num_arcs(); ++a)
    if (in_boundary(a)) out.push_back(a);
  return out;
}
std::vector<int> Graph::darts() const {
  std::vector<int> out;
  for (int a = 0; a < num_arcs(); ++a)
    if (is_dart(a)) out.push_back(a);
  return out;
}

const std::vector<Edge>& Graph::edges() const { return data_->edges; }
int Graph::edge_of(int a) const { return data_->edge_of[a]; }
bool Graph::is_internal_edge(int e) const {
  const Edge& ed = data_->edges[e];
  return !in_boundary(ed.first) && !in_boundary(ed.second);
}

const std::vector<std::string>& Graph::construction_issues() const { return data_->issues; }
detail::EmbCache& Graph::emb_cache() const { return data_->emb; }

GraphSpec Graph::spec() const {
  GraphSpec s;
  s.arcs = data_->arc_names;
  for (int a = 0; a < num_arcs(); ++a)
    if (dagger(a) >= 0) s.involution.emplace_back(arc_name(a), arc_name(dagger(a)));
  s.vertices = data_->vertex_names;
  for (int v = 0; v < num_vertices(); ++v) {
    std::vector<std::string> names;
    for (int a : nbhd(v)) names.push_back(arc_name(a));
    s.nbhd.emplace_back(vertex_name(v), names);
  }
  if (data_->boundary_explicit) {
    std::vector<std::string> b;
    for (int a : boundary()) b.push_back(arc_name(a));
    s.boundary = b;
  }
  return s;
}

bool Graph::operator==(const Graph& other) const {
  if (data_ == other.data_) return true;
  const auto& x = *data_;
  const auto& y = *other.data_;
  return x.arc_names == y.arc_names && x.vertex_names == y.vertex_names && x.dagger == y.dagger &&
         x.attach == y.attach && x.boundary == y.boundary;
}

Status validate(const Graph& g, Mode mode) {
  if (!g.construction_issues().empty()) return Status::failure("structure", g.construction_issues().front());
  const int na = g.num_arcs();
  for (int a = 0; a < na; ++a)
    if (g.dagger(a) < 0) return Status::failure("involution-total", "arc '" + g.arc_name(a) + "' has no partner");
  for (int a = 0; a < na; ++a) {
    if (g.dagger(g.dagger(a)) != a)
      return Status::failure("involution-self-inverse", "arc '" + g.arc_name(a) + "' is not an involution orbit");
  }
  for (int a = 0; a < na; ++a)
    if (g.dagger(a) == a) return Status::failure("involution-fixpoint-free", "arc '" + g.arc_name(a) + "' is fixed");

  if (mode == Mode::plain) {
    for (int a = 0; a < na; ++a) {
      if (g.in_boundary(a) == g.is_dart(a))
        return Status::failure("plain-boundary", "arc '" + g.arc_name(a) + "' breaks boundary = arcs minus darts");
    }
    return {};
  }
  for (int a = 0; a < na; ++a) {
    int b = g.dagger(a);
    if (g.is_dart(b) && !g.is_dart(a) && !g.in_boundary(a))
      return Status::failure("extended-boundary-lower",
                             "arc '" + g.arc_name(a) + "' pairs with a dart but is not in the boundary");
    if (g.in_boundary(a) && g.is_dart(a))
      return Status::failure("extended-boundary-upper", "dart '" + g.arc_name(a) + "' lies in the boundary");
  }
  for (int a = 0; a < na; ++a) {
    int b = g.dagger(a);
    if (g.in_boundary(a) && !g.is_dart(b) && !g.in_boundary(b))
      return Status::failure("extended-boundary-closed",
                             "boundary arc '" + g.arc_name(a) + "' has a partner outside boundary and darts");
  }
  return {};
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

bool is_connected(const Graph& g) {
  const int nv = g.num_vertices();
  const int ne = g.num_edges();
  if (nv + ne == 0) return false;
  UnionFind uf(nv + ne);
  for (int a = 0; a < g.num_arcs(); ++a)
    if (g.is_dart(a) && g.edge_of(a) >= 0) uf.unite(g.attach(a), nv + g.edge_of(a));
  int root = uf.find(0);
  for (int x = 1; x < nv + ne; ++x)
    if (uf.find(x) != root) return false;
  return true;
}

bool is_tree(const Graph& g) {
  if (!is_connected(g) || is_nodeless_loop(g)) return false;
  // The incidence graph on vertices and edges has one link per dart.
  return static_cast<int>(g.darts().size()) == g.num_vertices() + g.num_edges() - 1;
}

bool is_nodeless_loop(const Graph& g) {
  return g.num_vertices() == 0 && g.num_arcs() == 2 && g.boundary().empty() && g.dagger(0) == 1;
}

bool is_edge_graph(const Graph& g) {
  return g.num_vertices() == 0 && g.num_arcs() == 2 && g.boundary().size() == 2 && g.dagger(0) == 1;
}

bool is_star(const Graph& g) {
  if (g.num_vertices() != 1) return false;
  for (int a = 0; a < g.num_arcs(); ++a) {
    int b = g.dagger(a);
    if (b < 0) return false;
    if (g.is_dart(a) == g.is_dart(b)) return false;
  }
  return true;
}

GraphBuilder& GraphBuilder::vertex(const std::string& v) {
  if (nbhd_index_.count(v)) return *this;
  nbhd_index_[v] = spec_.nbhd.size();
  spec_.vertices.push_back(v);
  spec_.nbhd.emplace_back(v, std::vector<std::string>{});
  return *this;
}

GraphBuilder& GraphBuilder::edge(const std::string& a, const std::string& va, const std::string& b,
                                 const std::string& vb) {
  spec_.arcs.push_back(a);
  spec_.arcs.push_back(b);
  spec_.involution.emplace_back(a, b);
  spec_.involution.emplace_back(b, a);
  if (!va.empty()) {
    vertex(va);
    spec_.nbhd[nbhd_index_[va]].second.push_back(a);
  }
  if (!vb.empty()) {
    vertex(vb);
    spec_.nbhd[nbhd_index_[vb]].second.push_back(b);
  }
  return *this;
}

GraphSpec GraphBuilder::spec() const { return spec_; }
Graph GraphBuilder::build() const { return Graph(spec_); }

Graph star(int n) {
  GraphBuilder b;
  b.vertex("v");
  for (int i = 1; i <= n; ++i) b.edge(std::to_string(i), "v", std::to_string(i) + "†", "");
  return b.build();
}

Graph edge_graph() { return GraphBuilder().edge("♯", "", "♭", "").build(); }

Graph nodeless_loop() {
  GraphSpec s;
  s.arcs = {"a", "a†"};
  s.involution = {{"a", "a†"}, {"a†", "a"}};
  s.boundary = std::vector<std::string>{};
  return Graph(s);
}

Graph line_graph(int n) {
  GraphBuilder b;
  for (int i = 1; i <= n; ++i) b.vertex("v" + std::to_string(i));
  for (int i = 0; i <= n; ++i) {
    std::string upper = i == 0 ? "" : "v" + std::to_string(i);
    std::string lower = i == n ? "" : "v" + std::to_string(i + 1);
    b.edge("e" + std::to_string(i) + "a", upper, "e" + std::to_string(i) + "b", lower);
  }
  return b.build();
}

Graph loop_with_one_vertex() { return GraphBuilder().edge("1", "v", "2", "v").build(); }

Graph cycle_graph(int n) {
  GraphBuilder b;
  for (int i = 1; i <= n; ++i) b.vertex("v" + std::to_string(i));
  for (int i = 1; i <= n; ++i) {
    std::string next = "v" + std::to_string(i % n + 1);
    b.edge("e" + std::to_string(i) + "a", "v" + std::to_string(i), "e" + std::to_string(i) + "b", next);
  }
  return b.build();
}

}  // namespace graphcat
