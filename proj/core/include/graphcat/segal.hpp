#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "graphcat/corpus.hpp"
#include "graphcat/directed.hpp"
#include "graphcat/graphical_maps.hpp"

namespace graphcat {

// Graph categories that can be cut down to finite catalogs. tree_oriented is
// every oriented map between oriented trees; dioperadic keeps only the
// properadic ones.
enum class CategoryKind {
  u,
  utilde,
  u_oriented,
  utilde_oriented,
  tree,
  tree_oriented,
  cyclic,
  dioperadic,
  properadic,
  dendroidal,
};

std::string to_string(CategoryKind kind);
std::optional<CategoryKind> parse_category(std::string_view name);
bool is_oriented(CategoryKind kind);
Mode mode_of(CategoryKind kind);
std::vector<CategoryKind> all_categories();

// Membership in a category, using the same rules as the catalogs. Oriented
// kinds need an orientation on each graph.
Status check_category_object(CategoryKind kind, const Graph& g, const std::optional<Orientation>& x);
Status check_category_map(CategoryKind kind, const NewGraphMap& m, const std::optional<Orientation>& source,
                          const std::optional<Orientation>& target);

struct CatalogObject {
  std::string name;
  Graph graph;
  std::optional<Orientation> orientation;
};

struct CatalogMorphism {
  int source;
  int target;
  NewGraphMap map;
  bool active;
  bool inert;
};

// A finite full-on-hom-sets piece of a graph category: the admissible objects
// built from a base list, the edge and every star up to the largest valence,
// and all morphisms between them.
class Catalog {
 public:
  // Throws CapExceeded when an object breaks the caps.
  static Catalog build(CategoryKind kind, const std::vector<NamedGraph>& base, EnumerationCaps caps = {});

  CategoryKind kind() const { return kind_; }
  const std::vector<NamedGraph>& base() const { return base_; }
  EnumerationCaps caps() const { return caps_; }
  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }
  const CatalogObject& object(int i) const { return objects_[i]; }
  const CatalogMorphism& morphism(int i) const { return morphisms_[i]; }
  const std::vector<int>& hom(int source, int target) const { return hom_[source * num_objects() + target]; }
  const std::vector<int>& into(int target) const { return into_[target]; }
  const std::vector<int>& out_of(int source) const { return out_of_[source]; }

  int identity(int object) const { return identity_[object]; }
  // second after first; throws GraphError when not composable or not closed.
  int compose(int second, int first) const;
  std::optional<int> find_morphism(int source, int target, const NewGraphMap& m) const;
  std::optional<int> find_object(const Graph& g, const std::optional<Orientation>& x) const;
  std::optional<int> find_object(const std::string& name) const;

  // Edges and stars; nodeless loops are never elementary.
  bool is_elementary(int object) const;
  bool is_star(int object) const;
  bool is_iso(int morphism) const { return morphisms_[morphism].active && morphisms_[morphism].inert; }

 private:
  void add_morphism(int s, int t, NewGraphMap m);

  CategoryKind kind_ = CategoryKind::u;
  std::vector<NamedGraph> base_;
  EnumerationCaps caps_;
  std::vector<CatalogObject> objects_;
  std::vector<CatalogMorphism> morphisms_;
  std::vector<std::vector<int>> hom_;
  std::vector<std::vector<int>> into_;
  std::vector<std::vector<int>> out_of_;
  std::vector<int> identity_;
  std::map<std::tuple<int, int, std::vector<int>, std::vector<int>>, int> lookup_;
  struct ComposeCache {
    std::mutex mutex;
    std::unordered_map<std::uint64_t, int> table;
  };
  std::shared_ptr<ComposeCache> compose_cache_ = std::make_shared<ComposeCache>();
};

// The standard corpus plus the extra two-vertex trees.
std::vector<NamedGraph> catalog_corpus();

// Finite presheaf: elements of each object are 0..size-1; for a morphism
// f: c -> d, restriction[f] has one entry per element of d giving an element
// of c.
struct Presheaf {
  std::vector<int> sizes;
  std::vector<std::vector<int>> restriction;

  bool operator==(const Presheaf&) const = default;
};

// Shapes and functoriality. Composites are checked on every composable pair.
Status check_presheaf(const Catalog& c, const Presheaf& x);

Presheaf terminal_presheaf(const Catalog& c);
// Orientations of the underlying graph (sorted as in orientations_of).
Presheaf orientation_presheaf(const Catalog& c);
// Elements of X_c are the morphisms c -> object, in hom order.
Presheaf representable(const Catalog& c, int object);
Presheaf product(const Catalog& c, const Presheaf& x, const Presheaf& y);

// Arc colourings with c(a†) = involution(c(a)) and vertex weights in Z/modulus
// that add up along vertex images. On oriented catalogs with
// per_edge_orientation the colour is read on the positive arc only and the
// involution is ignored.
struct ColouredParams {
  std::vector<int> involution;  // on colours 0..n-1
  int modulus = 1;
  bool per_edge_orientation = false;
};
Presheaf coloured_presheaf(const Catalog& c, const ColouredParams& params);
ColouredParams random_coloured_params(std::uint64_t seed, bool oriented);
// A coloured presheaf drawn from the seed; Segal by construction.
Presheaf random_segal_presheaf(const Catalog& c, std::uint64_t seed);

// Largest sub-presheaf missing the element: drops it and everything that
// restricts to it.
Presheaf remove_element(const Catalog& c, const Presheaf& x, int object, int element);

struct SegalOptions {
  // Only stars count as elementary.
  bool flat = false;
};

struct SegalReport {
  bool segal = true;
  int object = -1;           // first failing object
  std::string reason;        // "not injective" or "not surjective"
  std::vector<long> limit_sizes;  // per object
};

// Elementary inert maps into the object (el/c), optionally stars only.
std::vector<int> elementary_slice(const Catalog& c, int object, bool flat = false);
// Compatible families over el/c, one entry per representative of each
// isomorphism class in el/c.
struct SegalLimit {
  std::vector<int> representatives;          // morphism ids
  std::vector<std::vector<int>> families;    // sorted
};
SegalLimit segal_limit(const Catalog& c, const Presheaf& x, int object, SegalOptions options = {});
SegalReport check_segal(const Catalog& c, const Presheaf& x, SegalOptions options = {});
inline bool is_segal(const Catalog& c, const Presheaf& x, SegalOptions options = {}) {
  return check_segal(c, x, options).segal;
}

// A functor between catalogs given on objects and morphisms.
struct CatalogFunctor {
  const Catalog* source = nullptr;
  const Catalog* target = nullptr;
  std::vector<int> objects;
  std::vector<int> morphisms;
};

// Forgets orientations and includes subcategories by matching underlying
// graphs, orientations (when the target has them) and maps. Throws GraphError
// when something has no image.
CatalogFunctor forgetful_functor(const Catalog& source, const Catalog& target);
Status check_functor(const CatalogFunctor& f);

// For each object and each morphism into its image, exactly one lift.
Status check_discrete_fibration(const CatalogFunctor& f);
// Slices over an object and over its image, restricted to inert maps, match
// one for one on objects and on morphisms, and lifted maps are inert.
Status check_inert_lifts(const CatalogFunctor& f);
// Same for the elementary slices.
Status check_strong_segal(const CatalogFunctor& f);

Presheaf restrict_presheaf(const CatalogFunctor& f, const Presheaf& m);
// Left Kan extension along a discrete fibration: the sum of the values over
// the fibre, with restriction through the unique lifts. Elements of the
// image at d are listed fibre object by fibre object in object order.
// Throws GraphError unless f is a discrete fibration.
Presheaf left_kan_extension(const CatalogFunctor& f, const Presheaf& z);
// Fibre objects over d, in the order their summands appear.
std::vector<int> fibre(const CatalogFunctor& f, int target_object);

// Vertex-collapse function of a map: for each target vertex, the source
// vertex whose image contains it, or -1 for the basepoint.
std::vector<int> gamma(const NewGraphMap& m);
bool pointed_active(const std::vector<int>& f, int codomain_size);
bool pointed_inert(const std::vector<int>& f, int codomain_size);

// Functoriality on all composable pairs, active to active, inert to inert,
// stars as units (gamma of size one and a unique inert section of every
// active map onto them), edges as nilobjects.
Status check_gamma(const Catalog& c);

// Square star -> piece (active), star -> graph (vertex inclusion),
// graph -> result (active), piece -> result (inert), from the complement of a
// class of the result.
struct SubstitutionSquare {
  NewGraphMap star_to_piece;
  NewGraphMap star_to_graph;
  NewGraphMap graph_to_result;
  NewGraphMap piece_to_result;
};
SubstitutionSquare substitution_square(const Graph& result, int emb_class, Mode mode);
Status check_square_commutes(const SubstitutionSquare& sq);
// Gamma takes the square to a pullback of pointed finite sets.
bool gamma_pullback(const SubstitutionSquare& sq);

}  // namespace graphcat
