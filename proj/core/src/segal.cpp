#include "graphcat/segal.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "graphcat/canonical.hpp"

namespace graphcat {

namespace {

constexpr long kMaxPresheafSize = 2'000'000;

struct KindInfo {
  CategoryKind kind;
  const char* name;
};

constexpr KindInfo kKinds[] = {
    {CategoryKind::u, "u"},
    {CategoryKind::utilde, "utilde"},
    {CategoryKind::u_oriented, "u-oriented"},
    {CategoryKind::utilde_oriented, "utilde-oriented"},
    {CategoryKind::tree, "tree"},
    {CategoryKind::tree_oriented, "tree-oriented"},
    {CategoryKind::cyclic, "cyclic"},
    {CategoryKind::dioperadic, "dioperadic"},
    {CategoryKind::properadic, "properadic"},
    {CategoryKind::dendroidal, "dendroidal"},
};

bool is_tree_kind(CategoryKind k) {
  return k == CategoryKind::tree || k == CategoryKind::tree_oriented || k == CategoryKind::dioperadic;
}

bool needs_boundary(CategoryKind k) { return k == CategoryKind::cyclic || k == CategoryKind::dendroidal; }

bool properadic_maps(CategoryKind k) { return k == CategoryKind::properadic || k == CategoryKind::dioperadic; }

std::string sign_string(const Graph& g, const Orientation& x) {
  std::string s;
  for (const Edge& e : g.edges()) s += x.sign[e.first] > 0 ? '+' : '-';
  return s;
}

Status underlying_admissible(CategoryKind kind, const Graph& g) {
  if (Status st = check_object(g, mode_of(kind)); !st) return st;
  if ((is_tree_kind(kind) || needs_boundary(kind)) && !is_tree(g)) return Status::failure("tree", "not a tree");
  if (needs_boundary(kind) && g.boundary().empty()) return Status::failure("boundary", "empty boundary");
  return {};
}

bool oriented_admissible(CategoryKind kind, const DirectedGraph& d) {
  if (kind == CategoryKind::properadic && !is_acyclic(d)) return false;
  if (kind == CategoryKind::dendroidal && !is_dendroidal(d)) return false;
  return true;
}

}  // namespace

Status check_category_object(CategoryKind kind, const Graph& g, const std::optional<Orientation>& x) {
  if (Status st = underlying_admissible(kind, g); !st) return st;
  if (!is_oriented(kind)) return {};
  if (!x) return Status::failure("orientation", "an orientation is required");
  if (Status st = check_orientation(g, *x); !st) return st;
  if (!oriented_admissible(kind, {g, *x}))
    return Status::failure(kind == CategoryKind::properadic ? "acyclic" : "dendroidal",
                           kind == CategoryKind::properadic ? "has a directed cycle" : "a class has several outputs");
  return {};
}

Status check_category_map(CategoryKind kind, const NewGraphMap& m, const std::optional<Orientation>& source,
                          const std::optional<Orientation>& target) {
  if (Status st = check_category_object(kind, m.source, source); !st)
    return Status::failure("source " + st.clause(), st.detail());
  if (Status st = check_category_object(kind, m.target, target); !st)
    return Status::failure("target " + st.clause(), st.detail());
  const Mode mode = mode_of(kind);
  if (Status st = check_new_map(m, mode); !st) return st;
  if (!is_oriented(kind)) return {};
  if (Status st = check_oriented_map(m, *source, *target, mode); !st) return st;
  if (properadic_maps(kind)) return check_properadic(m, *source, *target);
  return {};
}

std::string to_string(CategoryKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.name;
  return "?";
}

std::optional<CategoryKind> parse_category(std::string_view name) {
  for (const auto& k : kKinds)
    if (name == k.name) return k.kind;
  return std::nullopt;
}

std::vector<CategoryKind> all_categories() {
  std::vector<CategoryKind> out;
  for (const auto& k : kKinds) out.push_back(k.kind);
  return out;
}

bool is_oriented(CategoryKind kind) {
  switch (kind) {
    case CategoryKind::u:
    case CategoryKind::utilde:
    case CategoryKind::tree:
    case CategoryKind::cyclic:
      return false;
    default:
      return true;
  }
}

Mode mode_of(CategoryKind kind) {
  return kind == CategoryKind::utilde || kind == CategoryKind::utilde_oriented ? Mode::extended : Mode::plain;
}

std::vector<NamedGraph> catalog_corpus() {
  std::vector<NamedGraph> out = standard_corpus();
  std::set<std::string> names;
  for (const auto& ng : out) names.insert(ng.name);
  for (auto& ng : tree_corpus())
    if (!names.count(ng.name)) out.push_back(std::move(ng));
  return out;
}

// ---------------------------------------------------------------- catalogs

Catalog Catalog::build(CategoryKind kind, const std::vector<NamedGraph>& base, EnumerationCaps caps) {
  Catalog cat;
  cat.kind_ = kind;
  cat.base_ = base;
  cat.caps_ = caps;
  const Mode mode = mode_of(kind);

  auto admissible = [&](const Graph& g) { return underlying_admissible(kind, g).ok(); };

  std::vector<NamedGraph> under;
  std::set<std::string> codes;
  auto consider = [&](const std::string& name, const Graph& g) {
    if (!admissible(g)) return;
    if (g.num_vertices() > caps.max_vertices || g.num_arcs() > caps.max_arcs)
      throw CapExceeded("catalog object " + name + " exceeds the enumeration caps");
    if (codes.insert(canonical_code(g)).second) under.push_back({name, g, false});
  };
  int max_valence = 0;
  for (const auto& ng : base) {
    if (!admissible(ng.graph)) continue;
    consider(ng.name, ng.graph);
    for (int v = 0; v < ng.graph.num_vertices(); ++v)
      max_valence = std::max(max_valence, static_cast<int>(ng.graph.nbhd(v).size()));
  }
  consider("edge", edge_graph());
  for (int n = 0; n <= max_valence; ++n) consider("star" + std::to_string(n), star(n));

  // Objects, grouped by underlying graph.
  std::vector<std::vector<int>> over(under.size());
  std::map<std::pair<int, std::vector<int>>, int> by_orientation;
  for (std::size_t i = 0; i < under.size(); ++i) {
    const Graph& g = under[i].graph;
    if (!is_oriented(kind)) {
      over[i].push_back(static_cast<int>(cat.objects_.size()));
      cat.objects_.push_back({under[i].name, g, std::nullopt});
      continue;
    }
    for (const Orientation& x : orientations_of(g)) {
      DirectedGraph d{g, x};
      if (!oriented_admissible(kind, d)) continue;
      int id = static_cast<int>(cat.objects_.size());
      over[i].push_back(id);
      by_orientation[{static_cast<int>(i), x.sign}] = id;
      cat.objects_.push_back({under[i].name + "[" + sign_string(g, x) + "]", g, x});
    }
  }

  const int n = cat.num_objects();
  cat.hom_.assign(static_cast<std::size_t>(n) * n, {});
  cat.into_.assign(n, {});
  cat.out_of_.assign(n, {});
  for (std::size_t i = 0; i < under.size(); ++i) {
    for (std::size_t j = 0; j < under.size(); ++j) {
      if (over[i].empty() || over[j].empty()) continue;
      std::vector<NewGraphMap> maps = enumerate_maps(under[i].graph, under[j].graph, mode, caps);
      for (const NewGraphMap& m : maps) {
        if (!is_oriented(kind)) {
          cat.add_morphism(over[i][0], over[j][0], m);
          continue;
        }
        for (int t : over[j]) {
          const Orientation& y = *cat.objects_[t].orientation;
          Orientation x = restrict_orientation(m, y);
          auto it = by_orientation.find({static_cast<int>(i), x.sign});
          if (it == by_orientation.end()) continue;
          if (properadic_maps(kind) && !is_properadic(m, x, y)) continue;
          cat.add_morphism(it->second, t, m);
        }
      }
    }
  }
  cat.identity_.resize(n);
  for (int o = 0; o < n; ++o) {
    auto id = cat.find_morphism(o, o, identity_map(cat.objects_[o].graph));
    if (!id) throw GraphError("catalog: missing identity on " + cat.objects_[o].name);
    cat.identity_[o] = *id;
  }
  return cat;
}

void Catalog::add_morphism(int s, int t, NewGraphMap m) {
  MapKind k = classify(m);
  int id = num_morphisms();
  lookup_.emplace(std::make_tuple(s, t, m.arcs, m.classes), id);
  morphisms_.push_back({s, t, std::move(m), k.active, k.inert});
  hom_[s * num_objects() + t].push_back(id);
  into_[t].push_back(id);
  out_of_[s].push_back(id);
}

int Catalog::compose(int second, int first) const {
  const CatalogMorphism& g = morphisms_[second];
  const CatalogMorphism& f = morphisms_[first];
  if (f.target != g.source) throw GraphError("catalog: morphisms are not composable");
  const std::uint64_t key = static_cast<std::uint64_t>(second) << 32 | static_cast<std::uint32_t>(first);
  {
    std::lock_guard lock(compose_cache_->mutex);
    if (auto it = compose_cache_->table.find(key); it != compose_cache_->table.end()) return it->second;
  }
  auto id = find_morphism(f.source, g.target, graphcat::compose(g.map, f.map));
  if (!id) throw GraphError("catalog: composite missing from the catalog");
  std::lock_guard lock(compose_cache_->mutex);
  compose_cache_->table.emplace(key, *id);
  return *id;
}

std::optional<int> Catalog::find_morphism(int source, int target, const NewGraphMap& m) const {
  auto it = lookup_.find(std::make_tuple(source, target, m.arcs, m.classes));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Catalog::find_object(const Graph& g, const std::optional<Orientation>& x) const {
  for (int o = 0; o < num_objects(); ++o)
    if (objects_[o].orientation == x && objects_[o].graph == g) return o;
  return std::nullopt;
}

std::optional<int> Catalog::find_object(const std::string& name) const {
  for (int o = 0; o < num_objects(); ++o)
    if (objects_[o].name == name) return o;
  return std::nullopt;
}

bool Catalog::is_star(int object) const { return graphcat::is_star(objects_[object].graph); }

bool Catalog::is_elementary(int object) const {
  const Graph& g = objects_[object].graph;
  return is_edge_graph(g) || graphcat::is_star(g);
}

// ---------------------------------------------------------------- presheaves

Status check_presheaf(const Catalog& c, const Presheaf& x) {
  if (static_cast<int>(x.sizes.size()) != c.num_objects()) return Status::failure("sizes", "one size per object");
  if (static_cast<int>(x.restriction.size()) != c.num_morphisms())
    return Status::failure("restriction", "one table per morphism");
  for (int f = 0; f < c.num_morphisms(); ++f) {
    const auto& m = c.morphism(f);
    const auto& r = x.restriction[f];
    if (static_cast<int>(r.size()) != x.sizes[m.target])
      return Status::failure("restriction", "table for morphism " + std::to_string(f) + " has the wrong length");
    for (int e : r)
      if (e < 0 || e >= x.sizes[m.source])
        return Status::failure("restriction", "table for morphism " + std::to_string(f) + " out of range");
  }
  for (int o = 0; o < c.num_objects(); ++o) {
    const auto& r = x.restriction[c.identity(o)];
    for (int e = 0; e < x.sizes[o]; ++e)
      if (r[e] != e) return Status::failure("identity", "identity of " + c.object(o).name + " acts non-trivially");
  }
  for (int b = 0; b < c.num_objects(); ++b) {
    for (int f : c.into(b)) {
      for (int g : c.out_of(b)) {
        int h = c.compose(g, f);
        const auto& rf = x.restriction[f];
        const auto& rg = x.restriction[g];
        const auto& rh = x.restriction[h];
        for (std::size_t e = 0; e < rh.size(); ++e)
          if (rh[e] != rf[rg[e]]) return Status::failure("composite", "restriction does not respect a composite");
      }
    }
  }
  return {};
}

Presheaf terminal_presheaf(const Catalog& c) {
  Presheaf x;
  x.sizes.assign(c.num_objects(), 1);
  x.restriction.assign(c.num_morphisms(), std::vector<int>{0});
  return x;
}

Presheaf orientation_presheaf(const Catalog& c) {
  Presheaf x;
  std::vector<std::vector<Orientation>> per(c.num_objects());
  for (int o = 0; o < c.num_objects(); ++o) {
    per[o] = orientations_of(c.object(o).graph);
    x.sizes.push_back(static_cast<int>(per[o].size()));
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    const auto& m = c.morphism(f);
    std::vector<int> r;
    for (const Orientation& y : per[m.target]) {
      Orientation s = restrict_orientation(m.map, y);
      auto it = std::lower_bound(per[m.source].begin(), per[m.source].end(), s);
      r.push_back(static_cast<int>(it - per[m.source].begin()));
    }
    x.restriction.push_back(std::move(r));
  }
  return x;
}

Presheaf representable(const Catalog& c, int object) {
  Presheaf x;
  std::vector<int> position(c.num_morphisms(), -1);
  for (int o = 0; o < c.num_objects(); ++o) {
    const auto& h = c.hom(o, object);
    for (std::size_t i = 0; i < h.size(); ++i) position[h[i]] = static_cast<int>(i);
    x.sizes.push_back(static_cast<int>(h.size()));
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    const auto& m = c.morphism(f);
    std::vector<int> r;
    for (int g : c.hom(m.target, object)) r.push_back(position[c.compose(g, f)]);
    x.restriction.push_back(std::move(r));
  }
  return x;
}

Presheaf product(const Catalog& c, const Presheaf& x, const Presheaf& y) {
  Presheaf p;
  for (int o = 0; o < c.num_objects(); ++o) {
    long size = static_cast<long>(x.sizes[o]) * y.sizes[o];
    if (size > kMaxPresheafSize) throw CapExceeded("presheaf product too large");
    p.sizes.push_back(static_cast<int>(size));
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    const int t = c.morphism(f).target;
    const int ys = y.sizes[c.morphism(f).source];
    std::vector<int> r;
    for (int i = 0; i < x.sizes[t]; ++i)
      for (int j = 0; j < y.sizes[t]; ++j) r.push_back(x.restriction[f][i] * ys + y.restriction[f][j]);
    p.restriction.push_back(std::move(r));
  }
  return p;
}

namespace {

// Mixed-radix codes: one colour digit per edge, then one weight per vertex.
struct ColourCodec {
  int colours;
  int modulus;
  int edges;
  int vertices;

  long size() const {
    long s = 1;
    for (int i = 0; i < edges; ++i) s *= colours;
    for (int i = 0; i < vertices; ++i) s *= modulus;
    return s;
  }
  std::vector<int> decode(long code) const {
    std::vector<int> d(edges + vertices);
    for (int i = 0; i < edges + vertices; ++i) {
      int base = i < edges ? colours : modulus;
      d[i] = static_cast<int>(code % base);
      code /= base;
    }
    return d;
  }
  long encode(const std::vector<int>& d) const {
    long code = 0;
    for (int i = edges + vertices - 1; i >= 0; --i) code = code * (i < edges ? colours : modulus) + d[i];
    return code;
  }
};

}  // namespace

Presheaf coloured_presheaf(const Catalog& c, const ColouredParams& params) {
  const int nc = static_cast<int>(params.involution.size());
  if (nc == 0 || params.modulus < 1) throw GraphError("coloured presheaf: need colours and a positive modulus");
  for (int i = 0; i < nc; ++i)
    if (params.involution[i] < 0 || params.involution[i] >= nc || params.involution[params.involution[i]] != i)
      throw GraphError("coloured presheaf: colour map is not an involution");
  const bool per_edge = params.per_edge_orientation && is_oriented(c.kind());

  std::vector<ColourCodec> codec;
  // Arc whose colour is the stored digit of its edge.
  std::vector<std::vector<int>> reference(c.num_objects());
  Presheaf x;
  for (int o = 0; o < c.num_objects(); ++o) {
    const CatalogObject& obj = c.object(o);
    for (const Edge& e : obj.graph.edges()) {
      int ref = e.first;
      if (per_edge && obj.orientation->sign[e.first] < 0) ref = e.second;
      reference[o].push_back(ref);
    }
    codec.push_back({nc, params.modulus, obj.graph.num_edges(), obj.graph.num_vertices()});
    if (codec.back().size() > kMaxPresheafSize) throw CapExceeded("coloured presheaf too large");
    x.sizes.push_back(static_cast<int>(codec.back().size()));
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    const CatalogMorphism& m = c.morphism(f);
    const Graph& s = c.object(m.source).graph;
    const Graph& t = c.object(m.target).graph;
    const EmbPoset& p = emb_poset(s);
    const EmbPoset& q = emb_poset(t);
    auto arc_colour = [&](const std::vector<int>& digits, int arc) {
      int e = t.edge_of(arc);
      int col = digits[e];
      return arc == reference[m.target][e] ? col : (per_edge ? col : params.involution[col]);
    };
    std::vector<int> r;
    r.reserve(x.sizes[m.target]);
    for (long code = 0; code < x.sizes[m.target]; ++code) {
      std::vector<int> in = codec[m.target].decode(code);
      std::vector<int> out(s.num_edges() + s.num_vertices(), 0);
      for (int e = 0; e < s.num_edges(); ++e) out[e] = arc_colour(in, m.map.arcs[reference[m.source][e]]);
      for (int v = 0; v < s.num_vertices(); ++v) {
        int sum = 0;
        for (int u : q.key(m.map.classes[p.vertex_star(v)]).vertices) sum += in[t.num_edges() + u];
        out[s.num_edges() + v] = sum % params.modulus;
      }
      r.push_back(static_cast<int>(codec[m.source].encode(out)));
    }
    x.restriction.push_back(std::move(r));
  }
  return x;
}

ColouredParams random_coloured_params(std::uint64_t seed, bool oriented) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> three(1, 3);
  ColouredParams p;
  int nc = three(rng);
  std::vector<int> colours(nc);
  std::iota(colours.begin(), colours.end(), 0);
  std::shuffle(colours.begin(), colours.end(), rng);
  p.involution.assign(nc, 0);
  std::iota(p.involution.begin(), p.involution.end(), 0);
  for (int i = 0; i + 1 < nc; i += 2) {
    if (rng() % 2) {
      p.involution[colours[i]] = colours[i + 1];
      p.involution[colours[i + 1]] = colours[i];
    }
  }
  p.modulus = three(rng);
  p.per_edge_orientation = oriented && rng() % 2;
  return p;
}

Presheaf random_segal_presheaf(const Catalog& c, std::uint64_t seed) {
  return coloured_presheaf(c, random_coloured_params(seed, is_oriented(c.kind())));
}

Presheaf remove_element(const Catalog& c, const Presheaf& x, int object, int element) {
  std::vector<std::vector<char>> dead(c.num_objects());
  for (int o = 0; o < c.num_objects(); ++o) dead[o].assign(x.sizes[o], 0);
  std::vector<std::pair<int, int>> work{{object, element}};
  dead[object][element] = 1;
  while (!work.empty()) {
    auto [o, e] = work.back();
    work.pop_back();
    for (int f : c.out_of(o)) {
      int d = c.morphism(f).target;
      const auto& r = x.restriction[f];
      for (int z = 0; z < x.sizes[d]; ++z) {
        if (r[z] == e && !dead[d][z]) {
          dead[d][z] = 1;
          work.push_back({d, z});
        }
      }
    }
  }
  std::vector<std::vector<int>> renumber(c.num_objects());
  Presheaf out;
  for (int o = 0; o < c.num_objects(); ++o) {
    int next = 0;
    renumber[o].assign(x.sizes[o], -1);
    for (int e = 0; e < x.sizes[o]; ++e)
      if (!dead[o][e]) renumber[o][e] = next++;
    out.sizes.push_back(next);
  }
  for (int f = 0; f < c.num_morphisms(); ++f) {
    const auto& m = c.morphism(f);
    std::vector<int> r;
    for (int z = 0; z < x.sizes[m.target]; ++z)
      if (!dead[m.target][z]) r.push_back(renumber[m.source][x.restriction[f][z]]);
    out.restriction.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------- Segal condition

std::vector<int> elementary_slice(const Catalog& c, int object, bool flat) {
  std::vector<int> out;
  for (int f : c.into(object)) {
    const auto& m = c.morphism(f);
    if (!m.inert) continue;
    if (flat ? c.is_star(m.source) : c.is_elementary(m.source)) out.push_back(f);
  }
  return out;
}

namespace {

struct Constraint {
  int lower;  // index into representatives
  int upper;
  int morphism;  // lower's source -> upper's source, over the object
};

struct Cover {
  std::vector<int> representatives;
  std::vector<Constraint> constraints;
};

Cover elementary_cover(const Catalog& c, int object, bool flat) {
  std::vector<int> slice = elementary_slice(c, object, flat);
  Cover cover;
  std::vector<char> grouped(slice.size(), 0);
  for (std::size_t i = 0; i < slice.size(); ++i) {
    if (grouped[i]) continue;
    const int k = slice[i];
    cover.representatives.push_back(k);
    for (std::size_t j = i + 1; j < slice.size(); ++j) {
      if (grouped[j]) continue;
      const int k2 = slice[j];
      for (int u : c.hom(c.morphism(k2).source, c.morphism(k).source)) {
        if (c.is_iso(u) && c.compose(k, u) == k2) {
          grouped[j] = 1;
          break;
        }
      }
    }
  }
  const auto& reps = cover.representatives;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      for (int u : c.hom(c.morphism(reps[i]).source, c.morphism(reps[j]).source)) {
        if (i == j && u == c.identity(c.morphism(reps[i]).source)) continue;
        if (c.compose(reps[j], u) == reps[i])
          cover.constraints.push_back({static_cast<int>(i), static_cast<int>(j), u});
      }
    }
  }
  return cover;
}

std::vector<std::vector<int>> compatible_families(const Catalog& c, const Presheaf& x, const Cover& cover) {
  const auto& reps = cover.representatives;
  const int n = static_cast<int>(reps.size());
  // Stars first, then a breadth-first walk along the constraints so that most
  // values are forced by ones already chosen.
  std::vector<std::vector<int>> adj(n);
  for (const auto& k : cover.constraints) {
    adj[k.lower].push_back(k.upper);
    adj[k.upper].push_back(k.lower);
  }
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  auto walk = [&](int start) {
    std::vector<int> queue{start};
    placed[start] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      order.push_back(queue[h]);
      for (int nb : adj[queue[h]])
        if (!placed[nb]) {
          placed[nb] = 1;
          queue.push_back(nb);
        }
    }
  };
  for (int i = 0; i < n; ++i)
    if (!placed[i] && c.is_star(c.morphism(reps[i]).source)) walk(i);
  for (int i = 0; i < n; ++i)
    if (!placed[i]) walk(i);
  std::vector<int> position(n);
  for (int p = 0; p < n; ++p) position[order[p]] = p;
  std::vector<std::vector<Constraint>> due(n);
  for (const auto& k : cover.constraints) due[std::max(position[k.lower], position[k.upper])].push_back(k);

  std::vector<std::vector<int>> out;
  std::vector<int> value(n, -1);
  auto rec = [&](auto&& self, int p) -> void {
    if (p == n) {
      out.push_back(value);
      return;
    }
    const int r = order[p];
    const int size = x.sizes[c.morphism(reps[r]).source];
    for (int e = 0; e < size; ++e) {
      value[r] = e;
      bool ok = true;
      for (const auto& k : due[p])
        if (x.restriction[k.morphism][value[k.upper]] != value[k.lower]) {
          ok = false;
          break;
        }
      if (ok) self(self, p + 1);
    }
    value[r] = -1;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SegalLimit segal_limit(const Catalog& c, const Presheaf& x, int object, SegalOptions options) {
  Cover cover = elementary_cover(c, object, options.flat);
  return {cover.representatives, compatible_families(c, x, cover)};
}

SegalReport check_segal(const Catalog& c, const Presheaf& x, SegalOptions options) {
  SegalReport report;
  for (int o = 0; o < c.num_objects(); ++o) {
    SegalLimit lim = segal_limit(c, x, o, options);
    report.limit_sizes.push_back(static_cast<long>(lim.families.size()));
    if (!report.segal) continue;
    std::set<std::vector<int>> image;
    for (int e = 0; e < x.sizes[o]; ++e) {
      std::vector<int> family;
      for (int k : lim.representatives) family.push_back(x.restriction[k][e]);
      image.insert(std::move(family));
    }
    if (static_cast<int>(image.size()) != x.sizes[o]) {
      report.segal = false;
      report.object = o;
      report.reason = "not injective";
    } else if (image.size() != lim.families.size()) {
      report.segal = false;
      report.object = o;
      report.reason = "not surjective";
    }
  }
  return report;
}

// ---------------------------------------------------------------- functors

CatalogFunctor forgetful_functor(const Catalog& source, const Catalog& target) {
  if (is_oriented(target.kind()) && !is_oriented(source.kind()))
    throw GraphError("functor: cannot add an orientation");
  CatalogFunctor f{&source, &target, {}, {}};
  const bool keep = is_oriented(target.kind());
  for (int o = 0; o < source.num_objects(); ++o) {
    const auto& obj = source.object(o);
    auto t = target.find_object(obj.graph, keep ? obj.orientation : std::nullopt);
    if (!t) throw GraphError("functor: no image for object " + obj.name);
    f.objects.push_back(*t);
  }
  for (int m = 0; m < source.num_morphisms(); ++m) {
    const auto& mor = source.morphism(m);
    auto t = target.find_morphism(f.objects[mor.source], f.objects[mor.target], mor.map);
    if (!t) throw GraphError("functor: no image for a morphism out of " + source.object(mor.source).name);
    f.morphisms.push_back(*t);
  }
  return f;
}

Status check_functor(const CatalogFunctor& f) {
  const Catalog& s = *f.source;
  const Catalog& t = *f.target;
  for (int m = 0; m < s.num_morphisms(); ++m) {
    const auto& a = s.morphism(m);
    const auto& b = t.morphism(f.morphisms[m]);
    if (b.source != f.objects[a.source] || b.target != f.objects[a.target])
      return Status::failure("endpoints", "a morphism lands between the wrong objects");
  }
  for (int o = 0; o < s.num_objects(); ++o)
    if (f.morphisms[s.identity(o)] != t.identity(f.objects[o])) return Status::failure("identity", "identity not kept");
  for (int b = 0; b < s.num_objects(); ++b)
    for (int g : s.into(b))
      for (int h : s.out_of(b))
        if (f.morphisms[s.compose(h, g)] != t.compose(f.morphisms[h], f.morphisms[g]))
          return Status::failure("composite", "composite not kept");
  return {};
}

Status check_discrete_fibration(const CatalogFunctor& f) {
  const Catalog& s = *f.source;
  const Catalog& t = *f.target;
  for (int c = 0; c < s.num_objects(); ++c) {
    std::map<int, int> lifts;
    for (int m : s.into(c)) ++lifts[f.morphisms[m]];
    for (int phi : t.into(f.objects[c])) {
      auto it = lifts.find(phi);
      int count = it == lifts.end() ? 0 : it->second;
      if (count != 1)
        return Status::failure("unique lift", std::to_string(count) + " lifts of a map into " + s.object(c).name);
    }
  }
  return {};
}

namespace {

// Compares the slice of s over c with the slice of t over f(c), restricted to
// maps selected by `keep`, on objects and on morphisms.
template <class KeepS, class KeepT>
Status slice_bijection(const CatalogFunctor& f, int c, KeepS keep_s, KeepT keep_t, const char* clause) {
  const Catalog& s = *f.source;
  const Catalog& t = *f.target;
  std::vector<int> lower;
  std::vector<int> upper;
  for (int m : s.into(c))
    if (keep_s(m)) lower.push_back(m);
  for (int m : t.into(f.objects[c]))
    if (keep_t(m)) upper.push_back(m);
  std::vector<int> image;
  for (int m : lower) image.push_back(f.morphisms[m]);
  std::sort(image.begin(), image.end());
  std::sort(upper.begin(), upper.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end() || image != upper)
    return Status::failure(clause, "slice objects over " + s.object(c).name + " do not correspond");
  for (int k1 : lower) {
    for (int k2 : lower) {
      std::vector<int> a;
      for (int u : s.hom(s.morphism(k1).source, s.morphism(k2).source))
        if (s.compose(k2, u) == k1) a.push_back(f.morphisms[u]);
      std::vector<int> b;
      const int fk1 = f.morphisms[k1];
      const int fk2 = f.morphisms[k2];
      for (int v : t.hom(t.morphism(fk1).source, t.morphism(fk2).source))
        if (t.compose(fk2, v) == fk1) b.push_back(v);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) return Status::failure(clause, "slice morphisms over " + s.object(c).name + " do not correspond");
    }
  }
  return {};
}

}  // namespace

Status check_inert_lifts(const CatalogFunctor& f) {
  const Catalog& s = *f.source;
  const Catalog& t = *f.target;
  for (int c = 0; c < s.num_objects(); ++c) {
    for (int m : s.into(c))
      if (t.morphism(f.morphisms[m]).inert && !s.morphism(m).inert)
        return Status::failure("inert lift", "a lift of an inert map is not inert");
    auto keep_s = [&](int m) { return s.morphism(m).inert; };
    auto keep_t = [&](int m) { return t.morphism(m).inert; };
    if (Status st = slice_bijection(f, c, keep_s, keep_t, "inert slice"); !st) return st;
  }
  return {};
}

Status check_strong_segal(const CatalogFunctor& f) {
  const Catalog& s = *f.source;
  const Catalog& t = *f.target;
  for (int c = 0; c < s.num_objects(); ++c) {
    auto keep_s = [&](int m) { return s.morphism(m).inert && s.is_elementary(s.morphism(m).source); };
    auto keep_t = [&](int m) { return t.morphism(m).inert && t.is_elementary(t.morphism(m).source); };
    if (Status st = slice_bijection(f, c, keep_s, keep_t, "elementary slice"); !st) return st;
  }
  return {};
}

Presheaf restrict_presheaf(const CatalogFunctor& f, const Presheaf& m) {
  Presheaf x;
  for (int o : f.objects) x.sizes.push_back(m.sizes[o]);
  for (int g : f.morphisms) x.restriction.push_back(m.restriction[g]);
  return x;
}

std::vector<int> fibre(const CatalogFunctor& f, int target_object) {
  std::vector<int> out;
  for (int c = 0; c < f.source->num_objects(); ++c)
    if (f.objects[c] == target_object) out.push_back(c);
  return out;
}

Presheaf left_kan_extension(const CatalogFunctor& f, const Presheaf& z) {
  if (Status st = check_discrete_fibration(f); !st) throw GraphError("left Kan extension: " + st.message());
  const Catalog& s = *f.source;
  const Catalog& t = *f.target;
  std::vector<int> offset(s.num_objects(), 0);
  Presheaf x;
  for (int d = 0; d < t.num_objects(); ++d) {
    long total = 0;
    for (int c : fibre(f, d)) {
      offset[c] = static_cast<int>(total);
      total += z.sizes[c];
    }
    if (total > kMaxPresheafSize) throw CapExceeded("left Kan extension too large");
    x.sizes.push_back(static_cast<int>(total));
  }
  std::map<std::pair<int, int>, int> lift;  // (target morphism, source codomain) -> source morphism
  for (int m = 0; m < s.num_morphisms(); ++m) lift[{f.morphisms[m], s.morphism(m).target}] = m;
  for (int phi = 0; phi < t.num_morphisms(); ++phi) {
    std::vector<int> r(x.sizes[t.morphism(phi).target]);
    for (int c : fibre(f, t.morphism(phi).target)) {
      int l = lift.at({phi, c});
      int c2 = s.morphism(l).source;
      for (int e = 0; e < z.sizes[c]; ++e) r[offset[c] + e] = offset[c2] + z.restriction[l][e];
    }
    x.restriction.push_back(std::move(r));
  }
  return x;
}

// ---------------------------------------------------------------- gamma

std::vector<int> gamma(const NewGraphMap& m) {
  const EmbPoset& p = emb_poset(m.source);
  const EmbPoset& q = emb_poset(m.target);
  std::vector<int> out(m.target.num_vertices(), -1);
  for (int v = 0; v < m.source.num_vertices(); ++v) {
    for (int u : q.key(m.classes[p.vertex_star(v)]).vertices) {
      if (out[u] != -1) throw GraphError("gamma: vertex images overlap");
      out[u] = v;
    }
  }
  return out;
}

bool pointed_active(const std::vector<int>& f, int) {
  return std::none_of(f.begin(), f.end(), [](int v) { return v < 0; });
}

bool pointed_inert(const std::vector<int>& f, int codomain_size) {
  std::vector<int> hits(codomain_size, 0);
  for (int v : f)
    if (v >= 0) ++hits[v];
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

Status check_gamma(const Catalog& c) {
  std::vector<std::vector<int>> g;
  for (int m = 0; m < c.num_morphisms(); ++m) g.push_back(gamma(c.morphism(m).map));
  for (int m = 0; m < c.num_morphisms(); ++m) {
    const auto& mor = c.morphism(m);
    const int n = c.object(mor.source).graph.num_vertices();
    if (mor.active && !pointed_active(g[m], n)) return Status::failure("gamma active", "an active map is sent to a non-active one");
    if (mor.inert && !pointed_inert(g[m], n)) return Status::failure("gamma inert", "an inert map is sent to a non-inert one");
  }
  for (int b = 0; b < c.num_objects(); ++b) {
    for (int f : c.into(b)) {
      for (int h : c.out_of(b)) {
        const auto& gh = g[h];
        const auto& gf = g[f];
        const auto& gc = g[c.compose(h, f)];
        for (std::size_t u = 0; u < gh.size(); ++u)
          if (gc[u] != (gh[u] < 0 ? -1 : gf[gh[u]])) return Status::failure("gamma functor", "composite not respected");
      }
    }
  }
  for (int o = 0; o < c.num_objects(); ++o) {
    const Graph& gr = c.object(o).graph;
    if (is_edge_graph(gr) && gr.num_vertices() != 0) return Status::failure("nilobject", "an edge has vertices");
    if (!c.is_star(o)) continue;
    if (gr.num_vertices() != 1) return Status::failure("unit", "a star without exactly one vertex");
    for (int a : c.into(o)) {
      if (!c.morphism(a).active) continue;
      int sections = 0;
      for (int s : c.hom(o, c.morphism(a).source))
        if (c.morphism(s).inert && c.compose(a, s) == c.identity(o)) ++sections;
      if (sections != 1)
        return Status::failure("unit section", std::to_string(sections) + " inert sections of an active map onto " +
                                                   c.object(o).name);
    }
  }
  return {};
}

SubstitutionSquare substitution_square(const Graph& result, int emb_class, Mode mode) {
  Complement comp = complement(result, emb_class, mode);
  const EmbPoset& p = emb_poset(comp.graph);
  NewGraphMap star_to_graph = from_embedding(p.representative(p.vertex_star(comp.collapsed_vertex)));
  Factorization fz = factor(compose(comp.active, star_to_graph), mode);
  return {fz.active, star_to_graph, comp.active, fz.inert};
}

Status check_square_commutes(const SubstitutionSquare& sq) {
  if (!classify(sq.star_to_piece).active || !classify(sq.graph_to_result).active)
    return Status::failure("active", "horizontal maps must be active");
  if (!classify(sq.star_to_graph).inert || !classify(sq.piece_to_result).inert)
    return Status::failure("inert", "vertical maps must be inert");
  if (compose(sq.piece_to_result, sq.star_to_piece) != compose(sq.graph_to_result, sq.star_to_graph))
    return Status::failure("commutes", "the two composites differ");
  return {};
}

bool gamma_pullback(const SubstitutionSquare& sq) {
  std::vector<int> a = gamma(sq.star_to_graph);    // graph vertices -> star vertex
  std::vector<int> b = gamma(sq.star_to_piece);    // piece vertices -> star vertex
  std::vector<int> p1 = gamma(sq.graph_to_result); // result vertices -> graph vertices
  std::vector<int> p2 = gamma(sq.piece_to_result); // result vertices -> piece vertices
  auto at = [](const std::vector<int>& f, int x) { return x < 0 ? -1 : f[x]; };
  std::set<std::pair<int, int>> pullback;
  for (int g = -1; g < static_cast<int>(a.size()); ++g)
    for (int h = -1; h < static_cast<int>(b.size()); ++h)
      if (at(a, g) == at(b, h)) pullback.insert({g, h});
  std::set<std::pair<int, int>> image{{-1, -1}};
  for (std::size_t t = 0; t < p1.size(); ++t) {
    if (at(a, p1[t]) != at(b, p2[t])) return false;
    if (!image.insert({p1[t], p2[t]}).second) return false;
  }
  return image == pullback;
}

}  // namespace graphcat
