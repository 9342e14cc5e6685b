#include "graphcat/trees.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace graphcat {

namespace {

std::vector<int> meet(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> join(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void require_tree(const Graph& t) {
  if (!is_tree(t)) throw GraphError("expected a tree");
}

// Subtrees of t keyed for lookup; cached alongside the poset by identity.
struct SubtreeIndex {
  std::vector<Subtree> list;
  std::map<Subtree, int> index;
};

SubtreeIndex build_index(const Graph& t) {
  require_tree(t);
  const EmbPoset& p = emb_poset(t);
  SubtreeIndex out;
  for (int c = 0; c < p.size(); ++c) {
    GraphHom rep = p.representative(c);
    Subtree s;
    for (int a = 0; a < rep.source.num_arcs(); ++a) {
      s.arcs.push_back(rep.arcs[a]);
      if (rep.source.is_dart(a)) s.darts.push_back(rep.arcs[a]);
    }
    s.vertices = rep.vertices;
    std::sort(s.arcs.begin(), s.arcs.end());
    std::sort(s.darts.begin(), s.darts.end());
    std::sort(s.vertices.begin(), s.vertices.end());
    if (std::adjacent_find(s.arcs.begin(), s.arcs.end()) != s.arcs.end())
      throw GraphError("subtrees: an embedding into a tree repeats an arc");
    out.index.emplace(s, c);
    out.list.push_back(std::move(s));
  }
  return out;
}

}  // namespace

Status check_subtree(const Graph& t, const Subtree& s) {
  for (const auto* v : {&s.arcs, &s.darts, &s.vertices})
    if (!std::is_sorted(v->begin(), v->end()) || std::adjacent_find(v->begin(), v->end()) != v->end())
      return Status::failure("sorted", "subsets must be sorted without repeats");
  auto has = [](const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); };
  for (int a : s.arcs) {
    if (a < 0 || a >= t.num_arcs()) return Status::failure("range", "arc out of range");
    if (!has(s.arcs, t.dagger(a))) return Status::failure("involution", "arcs not closed under the involution");
  }
  for (int d : s.darts) {
    if (!has(s.arcs, d) || !t.is_dart(d)) return Status::failure("darts", "darts must be darts of the tree among the arcs");
    if (!has(s.vertices, t.attach(d))) return Status::failure("attach", "a dart hangs off a missing vertex");
  }
  for (int v : s.vertices) {
    if (v < 0 || v >= t.num_vertices()) return Status::failure("range", "vertex out of range");
    for (int d : t.nbhd(v))
      if (!has(s.darts, d)) return Status::failure("neighbourhood", "a chosen vertex is missing a dart");
  }
  if (s.arcs.empty() && s.vertices.empty()) return Status::failure("connected", "empty");
  // Connectivity through shared edges and vertices.
  std::vector<int> parent(s.arcs.size() + s.vertices.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto arc_slot = [&](int a) { return static_cast<int>(std::lower_bound(s.arcs.begin(), s.arcs.end(), a) - s.arcs.begin()); };
  auto vertex_slot = [&](int v) {
    return static_cast<int>(s.arcs.size() + (std::lower_bound(s.vertices.begin(), s.vertices.end(), v) - s.vertices.begin()));
  };
  for (int a : s.arcs) parent[find(arc_slot(a))] = find(arc_slot(t.dagger(a)));
  for (int d : s.darts) parent[find(arc_slot(d))] = find(vertex_slot(t.attach(d)));
  std::set<int> roots;
  for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find(static_cast<int>(i)));
  if (roots.size() != 1) return Status::failure("connected", "subtree is disconnected");
  return {};
}

std::vector<Subtree> subtrees(const Graph& t) { return build_index(t).list; }

Subtree subtree_of_class(const Graph& t, int emb_class) { return build_index(t).list.at(emb_class); }

int class_of_subtree(const Graph& t, const Subtree& s) {
  SubtreeIndex idx = build_index(t);
  auto it = idx.index.find(s);
  if (it == idx.index.end()) throw GraphError("not a subtree of this tree");
  return it->second;
}

bool overlap(const Subtree& r, const Subtree& s) {
  return !meet(r.arcs, s.arcs).empty() || !meet(r.vertices, s.vertices).empty();
}

std::optional<Subtree> tree_union(const Subtree& r, const Subtree& s) {
  if (!overlap(r, s)) return std::nullopt;
  return Subtree{join(r.arcs, s.arcs), join(r.darts, s.darts), join(r.vertices, s.vertices)};
}

std::optional<Subtree> tree_intersection(const Subtree& r, const Subtree& s) {
  if (!overlap(r, s)) return std::nullopt;
  return Subtree{meet(r.arcs, s.arcs), meet(r.darts, s.darts), meet(r.vertices, s.vertices)};
}

Status check_tree_map(const NewGraphMap& m, TreeMapOptions options) {
  if (!is_tree(m.source) || !is_tree(m.target)) return Status::failure("trees", "source and target must be trees");
  if (static_cast<int>(m.arcs.size()) != m.source.num_arcs()) return Status::failure("arc-map", "not total");
  for (int a = 0; a < m.source.num_arcs(); ++a) {
    if (m.arcs[a] < 0 || m.arcs[a] >= m.target.num_arcs()) return Status::failure("arc-map", "out of range");
    if (m.arcs[m.source.dagger(a)] != m.target.dagger(m.arcs[a])) return Status::failure("arc-map", "not involutive");
  }
  SubtreeIndex src = build_index(m.source);
  SubtreeIndex tgt = build_index(m.target);
  const int n = static_cast<int>(src.list.size());
  if (static_cast<int>(m.classes.size()) != n) return Status::failure("table-total", "table does not cover the source");
  for (int c : m.classes)
    if (c < 0 || c >= static_cast<int>(tgt.list.size())) return Status::failure("table-total", "out of range");
  const EmbPoset& p = emb_poset(m.source);
  const EmbPoset& q = emb_poset(m.target);
  for (int c = 0; c < n; ++c) {
    std::vector<int> img;
    for (int a : p.key(c).boundary) img.push_back(m.arcs[a]);
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end() || img != q.key(m.classes[c]).boundary)
      return Status::failure("(iv) boundary", "boundary of an image differs from the arc image");
  }
  auto image = [&](const Subtree& s) -> const Subtree& { return tgt.list[m.classes[src.index.at(s)]]; };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Subtree& s = src.list[i];
      const Subtree& t = src.list[j];
      if (!overlap(s, t)) continue;
      const Subtree& fs = tgt.list[m.classes[i]];
      const Subtree& ft = tgt.list[m.classes[j]];
      if (!overlap(fs, ft)) return Status::failure("(v) overlap", "overlapping subtrees stop overlapping");
      if (options.check_intersections && image(*tree_intersection(s, t)) != *tree_intersection(fs, ft))
        return Status::failure("(v) intersection", "intersection not preserved");
      if (image(*tree_union(s, t)) != *tree_union(fs, ft)) return Status::failure("(v) union", "union not preserved");
    }
  }
  return {};
}

std::optional<NewGraphMap> forced_tree_table(const Graph& source, const Graph& target, const std::vector<int>& arcs) {
  require_tree(source);
  require_tree(target);
  const EmbPoset& p = emb_poset(source);
  const EmbPoset& q = emb_poset(target);
  NewGraphMap m{source, target, arcs, std::vector<int>(p.size())};
  for (int c = 0; c < p.size(); ++c) {
    std::vector<int> img;
    for (int a : p.key(c).boundary) img.push_back(arcs[a]);
    std::sort(img.begin(), img.end());
    const auto& candidates = q.classes_with_boundary(img);
    if (candidates.empty()) return std::nullopt;
    // The boundary map is injective on a tree's embeddings.
    m.classes[c] = candidates.front();
  }
  return m;
}

}  // namespace graphcat
