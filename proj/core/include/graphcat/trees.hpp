#pragma once

#include <optional>
#include <vector>

#include "graphcat/graphical_maps.hpp"

namespace graphcat {

// Arc, dart and vertex subsets of a tree, closed under the involution, with
// every dart at a chosen vertex included, and connected.
struct Subtree {
  std::vector<int> arcs;
  std::vector<int> darts;
  std::vector<int> vertices;

  bool operator==(const Subtree&) const = default;
  auto operator<=>(const Subtree&) const = default;
};

Status check_subtree(const Graph& t, const Subtree& s);
// Indexed like emb_poset(t). Throws GraphError unless t is a tree.
std::vector<Subtree> subtrees(const Graph& t);
Subtree subtree_of_class(const Graph& t, int emb_class);
int class_of_subtree(const Graph& t, const Subtree& s);  // throws GraphError

bool overlap(const Subtree& r, const Subtree& s);
std::optional<Subtree> tree_union(const Subtree& r, const Subtree& s);
std::optional<Subtree> tree_intersection(const Subtree& r, const Subtree& s);

struct TreeMapOptions {
  bool check_intersections = true;
};

// Condition (iv) together with overlap preservation, intersections (unless
// switched off) and unions. Clauses: trees, arc-map, table-total,
// (iv) boundary, (v) overlap, (v) intersection, (v) union.
Status check_tree_map(const NewGraphMap& m, TreeMapOptions options = {});

// The unique table compatible with (iv) for an arc function, when there is one.
std::optional<NewGraphMap> forced_tree_table(const Graph& source, const Graph& target, const std::vector<int>& arcs);

}  // namespace graphcat
