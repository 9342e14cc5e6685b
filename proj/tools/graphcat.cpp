#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphcat/canonical.hpp"
#include "graphcat/corpus.hpp"
#include "graphcat/io.hpp"
#include "graphcat/oracle.hpp"
#include "graphcat/segal.hpp"
#include "graphcat/trees.hpp"

using namespace graphcat;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

// Bad input that parsed but cannot be acted on.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Result {
  json doc;
  int status = kOk;
};

Result status_result(json doc, const Status& st) {
  doc["ok"] = st.ok();
  if (!st.ok()) {
    doc["clause"] = st.clause();
    doc["detail"] = st.detail();
  }
  return {std::move(doc), st.ok() ? kOk : kFalse};
}

Mode parse_mode(const std::string& s) {
  if (s == "plain") return Mode::plain;
  if (s == "extended") return Mode::extended;
  throw UsageError("mode must be plain or extended");
}

CategoryKind parse_kind(const std::string& s) {
  auto k = parse_category(s);
  if (!k) throw UsageError("unknown category '" + s + "'");
  return *k;
}

// Extended when a graph carries an explicit boundary, unless overridden.
Mode pick_mode(const std::string& flag, std::initializer_list<const Graph*> graphs) {
  if (!flag.empty()) return parse_mode(flag);
  for (const Graph* g : graphs)
    if (g->boundary_explicit() || is_nodeless_loop(*g)) return Mode::extended;
  return Mode::plain;
}

GraphDocument load_graph(const std::string& path) { return parse_graph(read_text_file(path)); }
MapDocument load_map(const std::string& path) { return parse_map(read_text_file(path)); }

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

json names(const Graph& g, const std::vector<int>& arcs) {
  json out = json::array();
  for (int a : arcs) out.push_back(g.arc_name(a));
  return out;
}

json map_summary(const NewGraphMap& m) {
  json arcs = json::object();
  for (int a = 0; a < m.source.num_arcs(); ++a) arcs[m.source.arc_name(a)] = m.target.arc_name(m.arcs[a]);
  json classes = json::object();
  for (int c = 0; c < static_cast<int>(m.classes.size()); ++c)
    classes[class_name(m.source, c)] = class_name(m.target, m.classes[c]);
  MapKind k = classify(m);
  return {{"arcs", arcs}, {"classes", classes}, {"active", k.active}, {"inert", k.inert}};
}

json report_json(const OracleReport& r) {
  return {{"graphs", r.graphs}, {"pairs", r.pairs},           {"maps", r.maps},
          {"triples", r.triples}, {"mismatches", r.mismatches}, {"failures", r.failures}};
}

std::optional<std::filesystem::path> cache_dir() {
  const char* dir = std::getenv("GRAPHCAT_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  std::filesystem::create_directories(dir);
  return std::filesystem::path(dir);
}

// Verbs

Result cmd_validate(const std::string& path, const std::string& mode_flag, const std::string& category) {
  GraphDocument d = load_graph(path);
  const Graph& g = d.graph;
  Mode mode = pick_mode(mode_flag, {&g});
  json doc = {{"verb", "validate"}, {"mode", mode == Mode::plain ? "plain" : "extended"},
              {"arcs", g.num_arcs()}, {"vertices", g.num_vertices()}};
  Status st = validate(g, mode);
  if (st.ok()) {
    doc["edges"] = g.num_edges();
    doc["connected"] = is_connected(g);
    doc["tree"] = is_tree(g);
    doc["boundary"] = names(g, g.boundary());
  }
  if (st.ok() && !category.empty()) {
    doc["category"] = category;
    st = check_category_object(parse_kind(category), g, d.orientation);
  }
  return status_result(std::move(doc), st);
}

Result cmd_emb(const std::string& path) {
  GraphDocument d = load_graph(path);
  const Graph& g = d.graph;
  const EmbPoset& p = emb_poset(g);
  json classes = json::array();
  for (int c = 0; c < p.size(); ++c) {
    json below = json::array();
    for (int h = 0; h < p.size(); ++h)
      if (h != c && p.leq(h, c)) below.push_back(h);
    json verts = json::array();
    for (int v : p.key(c).vertices) verts.push_back(g.vertex_name(v));
    classes.push_back({{"index", c},
                       {"name", class_name(g, c)},
                       {"vertices", verts},
                       {"boundary", names(g, p.key(c).boundary)},
                       {"edge", p.is_edge(c)},
                       {"vertex_star", p.is_vertex_star(c)},
                       {"top", c == p.top()},
                       {"below", below}});
  }
  return {{{"verb", "emb"}, {"count", p.size()}, {"classes", classes}}, kOk};
}

Result cmd_check_map(const std::string& path, const std::string& category) {
  MapDocument d = load_map(path);
  CategoryKind kind = parse_kind(category);
  json doc = {{"verb", "check-map"}, {"category", category}};
  Status st = check_category_map(kind, d.map, d.source_orientation, d.target_orientation);
  if (st.ok()) {
    MapKind k = classify(d.map);
    doc["active"] = k.active;
    doc["inert"] = k.inert;
  }
  return status_result(std::move(doc), st);
}

Result cmd_compose(const std::string& first_path, const std::string& second_path, const std::string& mode_flag,
                   const std::string& out) {
  MapDocument f = load_map(first_path);
  MapDocument g = load_map(second_path);
  if (f.map.target != g.map.source) throw UsageError("the first map's target is not the second map's source");
  Mode mode = pick_mode(mode_flag, {&f.map.source, &f.map.target, &g.map.target});
  for (const auto* m : {&f.map, &g.map})
    if (Status st = check_new_map(*m, mode); !st)
      return status_result({{"verb", "compose"}}, Status::failure("input " + st.clause(), st.detail()));
  NewGraphMap gf = compose(g.map, f.map);
  std::string text = emit_map(gf, f.source_orientation, g.target_orientation);
  write_out(out, text);
  return {{{"verb", "compose"}, {"ok", true}, {"map", map_summary(gf)}, {"document", text}}, kOk};
}

Result cmd_factor(const std::string& path, const std::string& mode_flag) {
  MapDocument d = load_map(path);
  Mode mode = pick_mode(mode_flag, {&d.map.source, &d.map.target});
  if (Status st = check_new_map(d.map, mode); !st) return status_result({{"verb", "factor"}}, st);
  Factorization f = factor(d.map, mode);
  return {{{"verb", "factor"},
           {"ok", true},
           {"middle", emit_graph(f.middle)},
           {"middle_code", canonical_code(f.middle)},
           {"active", emit_map(f.active)},
           {"inert", emit_map(f.inert)}},
          kOk};
}

// Piece for a vertex with no --piece: its own star, with each dart matched to
// the boundary arc next to it.
Piece own_star(const Graph& g, int v) {
  GraphBuilder b;
  b.vertex("v");
  for (int d : g.nbhd(v)) {
    const std::string& n = g.arc_name(d);
    b.edge("d" + n, "v", "b" + n, "");
  }
  Piece p{b.build(), {}};
  for (int d : g.nbhd(v)) p.match.emplace_back(d, p.graph.arc("b" + g.arc_name(d)));
  return p;
}

Result cmd_substitute(const std::string& path, const std::vector<std::string>& piece_flags,
                      const std::vector<std::string>& match_flags, const std::string& mode_flag,
                      const std::string& out) {
  GraphDocument d = load_graph(path);
  const Graph& g = d.graph;
  std::map<int, Graph> given;
  for (const auto& flag : piece_flags) {
    auto eq = flag.find('=');
    if (eq == std::string::npos) throw UsageError("--piece expects vertex=file");
    auto v = g.find_vertex(flag.substr(0, eq));
    if (!v) throw UsageError("unknown vertex '" + flag.substr(0, eq) + "'");
    given[*v] = load_graph(flag.substr(eq + 1)).graph;
  }
  std::map<int, std::vector<std::pair<std::string, std::string>>> matches;
  for (const auto& flag : match_flags) {
    auto eq = flag.find('=');
    if (eq == std::string::npos) throw UsageError("--match expects vertex=dart:arc,...");
    auto v = g.find_vertex(flag.substr(0, eq));
    if (!v) throw UsageError("unknown vertex '" + flag.substr(0, eq) + "'");
    std::string rest = flag.substr(eq + 1);
    for (std::size_t start = 0; start <= rest.size();) {
      auto comma = rest.find(',', start);
      std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      auto colon = item.find(':');
      if (colon == std::string::npos) throw UsageError("--match item '" + item + "' needs dart:arc");
      matches[*v].emplace_back(item.substr(0, colon), item.substr(colon + 1));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  std::vector<Piece> pieces;
  for (int v = 0; v < g.num_vertices(); ++v) {
    auto it = given.find(v);
    if (it == given.end()) {
      if (matches.count(v)) throw UsageError("--match for vertex '" + g.vertex_name(v) + "' without a --piece");
      pieces.push_back(own_star(g, v));
      continue;
    }
    Piece p{it->second, {}};
    if (auto m = matches.find(v); m != matches.end()) {
      for (const auto& [dart, arc] : m->second) {
        auto da = g.find_arc(dart);
        auto pa = p.graph.find_arc(arc);
        if (!da) throw UsageError("unknown dart '" + dart + "'");
        if (!pa) throw UsageError("unknown piece arc '" + arc + "'");
        p.match.emplace_back(*da, *pa);
      }
    } else {
      // Darts match the piece's boundary arcs of the same name.
      for (int dart : g.nbhd(v)) {
        auto pa = p.graph.find_arc(g.arc_name(dart));
        if (!pa) throw UsageError("piece for '" + g.vertex_name(v) + "' has no arc named '" + g.arc_name(dart) + "'");
        p.match.emplace_back(dart, *pa);
      }
    }
    pieces.push_back(std::move(p));
  }
  std::vector<const Graph*> graphs{&g};
  for (const auto& p : pieces) graphs.push_back(&p.graph);
  Mode mode = mode_flag.empty() ? Mode::plain : parse_mode(mode_flag);
  if (mode_flag.empty())
    for (const Graph* x : graphs)
      if (x->boundary_explicit() || is_nodeless_loop(*x)) mode = Mode::extended;
  try {
    Substitution s = substitute(g, pieces, mode);
    std::string text = emit_graph(s.result);
    write_out(out, text);
    return {{{"verb", "substitute"}, {"ok", true}, {"graph", text}}, kOk};
  } catch (const SubstitutionError& e) {
    return {{{"verb", "substitute"}, {"ok", false}, {"clause", "substitution"}, {"detail", e.what()}}, kFalse};
  }
}

Result cmd_complement(const std::string& path, const std::string& cls, const std::string& mode_flag,
                      const std::string& out) {
  GraphDocument d = load_graph(path);
  Mode mode = pick_mode(mode_flag, {&d.graph});
  int c = parse_class_name(d.graph, cls);
  Complement comp = complement(d.graph, c, mode);
  std::string text = emit_graph(comp.graph);
  write_out(out, text);
  return {{{"verb", "complement"},
           {"ok", true},
           {"graph", text},
           {"collapsed_vertex", comp.graph.vertex_name(comp.collapsed_vertex)},
           {"active", emit_map(comp.active)}},
          kOk};
}

Result cmd_enumerate(const std::string& source, const std::string& target, const std::string& mode_flag,
                     EnumerationCaps caps, const std::string& category) {
  GraphDocument s = load_graph(source);
  GraphDocument t = load_graph(target);
  Mode mode = pick_mode(mode_flag, {&s.graph, &t.graph});
  std::vector<NewGraphMap> maps;
  if (category.empty()) {
    maps = enumerate_maps(s.graph, t.graph, mode, caps);
  } else {
    CategoryKind kind = parse_kind(category);
    mode = mode_of(kind);
    for (auto& m : enumerate_maps(s.graph, t.graph, mode, caps))
      if (check_category_map(kind, m, s.orientation, t.orientation)) maps.push_back(std::move(m));
  }
  json list = json::array();
  for (const auto& m : maps) list.push_back(map_summary(m));
  json doc = {{"verb", "enumerate-maps"}, {"mode", mode == Mode::plain ? "plain" : "extended"}};
  if (!category.empty()) doc["category"] = category;
  doc["count"] = maps.size();
  doc["maps"] = list;
  return {std::move(doc), kOk};
}

Result cmd_oracle(const std::string& equivalence, EnumerationCaps caps, const std::string& modes_flag) {
  if (caps.max_vertices < 1 || caps.max_arcs < 1) throw UsageError("the oracle needs positive caps");
  std::vector<Mode> modes;
  if (modes_flag == "both" || modes_flag == "plain") modes.push_back(Mode::plain);
  if (modes_flag == "both" || modes_flag == "extended") modes.push_back(Mode::extended);
  if (modes.empty()) throw UsageError("--mode must be plain, extended or both");

  const std::string key = "oracle-" + equivalence + "-" + std::to_string(caps.max_vertices) + "-" +
                          std::to_string(caps.max_arcs) + "-" + modes_flag + ".json";
  auto dir = cache_dir();
  if (dir && std::filesystem::exists(*dir / key)) {
    json doc = json::parse(read_text_file((*dir / key).string()));
    return {doc, doc.value("ok", false) ? kOk : kFalse};
  }

  OracleReport r;
  if (equivalence == "new-old") r = check_presentations(standard_corpus(), caps, modes);
  else if (equivalence == "tables") r = check_table_search(standard_corpus(), caps, modes);
  else throw UsageError("--equivalence must be new-old or tables");
  json doc = {{"verb", "oracle"},
              {"equivalence", equivalence},
              {"max_vertices", caps.max_vertices},
              {"max_arcs", caps.max_arcs},
              {"mode", modes_flag},
              {"ok", r.ok()},
              {"report", report_json(r)}};
  if (dir) std::ofstream(*dir / key) << doc.dump(2) << "\n";
  return {doc, r.ok() ? kOk : kFalse};
}

Result cmd_tree_check(const std::string& path) {
  MapDocument d = load_map(path);
  Status tree = check_tree_map(d.map);
  json doc = {{"verb", "tree-check"}};
  if (is_tree(d.map.source) && is_tree(d.map.target)) {
    Status full = check_new_map(d.map, Mode::plain);
    doc["graphical"] = full.ok();
    doc["agree"] = full.ok() == tree.ok();
  }
  return status_result(std::move(doc), tree);
}

Result cmd_properadic_check(const std::string& path) {
  MapDocument d = load_map(path);
  if (!d.source_orientation || !d.target_orientation)
    throw UsageError("properadic-check needs orientations on both graphs");
  json doc = {{"verb", "properadic-check"}};
  Status st = check_category_map(CategoryKind::properadic, d.map, d.source_orientation, d.target_orientation);
  return status_result(std::move(doc), st);
}

// Segal

Result segal_make(const std::string& category, const std::string& what, const std::string& out) {
  Catalog c = Catalog::build(parse_kind(category), catalog_corpus());
  Presheaf x;
  if (what == "terminal") {
    x = terminal_presheaf(c);
  } else if (what == "orientation") {
    x = orientation_presheaf(c);
  } else if (what.starts_with("representable:")) {
    auto o = c.find_object(what.substr(14));
    if (!o) throw UsageError("no object named '" + what.substr(14) + "'");
    x = representable(c, *o);
  } else if (what.starts_with("random:")) {
    x = random_segal_presheaf(c, std::stoull(what.substr(7)));
  } else {
    throw UsageError("--kind must be terminal, orientation, representable:NAME or random:SEED");
  }
  std::string text = emit_presheaf(c, x);
  write_out(out, text);
  json doc = {{"verb", "segal make"}, {"category", category}, {"objects", c.num_objects()},
              {"morphisms", c.num_morphisms()}, {"sizes", x.sizes}};
  if (out.empty()) doc["document"] = text;
  return {doc, kOk};
}

json segal_json(const Catalog& c, const SegalReport& r) {
  json out = {{"segal", r.segal}};
  if (!r.segal) {
    out["object"] = c.object(r.object).name;
    out["reason"] = r.reason;
  }
  return out;
}

Result segal_check(const std::string& path, bool flat) {
  PresheafDocument d = parse_presheaf(read_text_file(path));
  json doc = {{"verb", "segal check"}, {"category", to_string(d.catalog.kind())}, {"flat", flat}};
  if (Status st = check_presheaf(d.catalog, d.presheaf); !st) return status_result(std::move(doc), st);
  SegalReport r = check_segal(d.catalog, d.presheaf, {.flat = flat});
  doc.update(segal_json(d.catalog, r));
  doc["ok"] = r.segal;
  return {doc, r.segal ? kOk : kFalse};
}

// restrict: along the inclusion of `other` into the presheaf's catalog.
// lke: along the functor from the presheaf's catalog to `other`.
Result segal_move(const std::string& path, const std::string& other, bool extend, const std::string& out) {
  PresheafDocument d = parse_presheaf(read_text_file(path));
  if (Status st = check_presheaf(d.catalog, d.presheaf); !st)
    return status_result({{"verb", extend ? "segal lke" : "segal restrict"}}, st);
  Catalog o = Catalog::build(parse_kind(other), d.catalog.base(), d.catalog.caps());
  CatalogFunctor f = extend ? forgetful_functor(d.catalog, o) : forgetful_functor(o, d.catalog);
  Presheaf x = extend ? left_kan_extension(f, d.presheaf) : restrict_presheaf(f, d.presheaf);
  std::string text = emit_presheaf(o, x);
  write_out(out, text);
  json doc = {{"verb", extend ? "segal lke" : "segal restrict"},
              {"from", to_string(d.catalog.kind())},
              {"to", other},
              {"sizes", x.sizes}};
  doc.update(segal_json(o, check_segal(o, x)));
  doc["ok"] = true;
  if (out.empty()) doc["document"] = text;
  return {doc, kOk};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphcat: graphs, graphical maps and presheaves on graph categories"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string graph, map, mode, category, out, source, target, first, second, cls, equivalence, modes = "both";
  std::string presheaf, kind, other;
  std::vector<std::string> pieces, matches;
  EnumerationCaps caps;
  bool flat = false;
  bool oriented_dot = true;
  std::optional<std::function<Result()>> run;

  auto caps_flags = [&](CLI::App* sub, bool required) {
    auto* v = sub->add_option("--max-vertices", caps.max_vertices, "vertex cap")->check(CLI::PositiveNumber);
    auto* a = sub->add_option("--max-arcs", caps.max_arcs, "arc cap")->check(CLI::PositiveNumber);
    if (required) v->required();
    (void)a;
  };

  auto* validate_cmd = app.add_subcommand("validate", "check the graph axioms");
  validate_cmd->add_option("--graph", graph, "graph document")->required();
  validate_cmd->add_option("--mode", mode, "plain or extended");
  validate_cmd->add_option("--category", category, "also check membership in a category");
  validate_cmd->callback([&] { run = [&] { return cmd_validate(graph, mode, category); }; });

  auto* emb_cmd = app.add_subcommand("emb", "list embedding classes");
  emb_cmd->add_option("--graph", graph, "graph document")->required();
  emb_cmd->callback([&] { run = [&] { return cmd_emb(graph); }; });

  auto* check_cmd = app.add_subcommand("check-map", "check a map in a category");
  check_cmd->add_option("--map", map, "map document")->required();
  check_cmd->add_option("--category", category, "category")
      ->required()
      ->check(CLI::IsMember({"u", "utilde", "u-oriented", "utilde-oriented", "tree", "tree-oriented", "cyclic",
                             "dioperadic", "properadic", "dendroidal"}));
  check_cmd->callback([&] { run = [&] { return cmd_check_map(map, category); }; });

  auto* compose_cmd = app.add_subcommand("compose", "compose two maps");
  compose_cmd->add_option("--first", first, "map applied first")->required();
  compose_cmd->add_option("--second", second, "map applied second")->required();
  compose_cmd->add_option("--mode", mode, "plain or extended");
  compose_cmd->add_option("--out", out, "write the composite here");
  compose_cmd->callback([&] { run = [&] { return cmd_compose(first, second, mode, out); }; });

  auto* factor_cmd = app.add_subcommand("factor", "active-inert factorization");
  factor_cmd->add_option("--map", map, "map document")->required();
  factor_cmd->add_option("--mode", mode, "plain or extended");
  factor_cmd->callback([&] { run = [&] { return cmd_factor(map, mode); }; });

  auto* subst_cmd = app.add_subcommand("substitute", "replace vertices by graphs");
  subst_cmd->add_option("--graph", graph, "graph document")->required();
  subst_cmd->add_option("--piece", pieces, "vertex=graph-file; other vertices keep their star");
  subst_cmd->add_option("--match", matches, "vertex=dart:arc,...; default matches arcs by name");
  subst_cmd->add_option("--mode", mode, "plain or extended");
  subst_cmd->add_option("--out", out, "write the result here");
  subst_cmd->callback([&] { run = [&] { return cmd_substitute(graph, pieces, matches, mode, out); }; });

  auto* comp_cmd = app.add_subcommand("complement", "collapse an embedding class to a vertex");
  comp_cmd->add_option("--graph", graph, "graph document")->required();
  comp_cmd->add_option("--class", cls, "class name, vertices/boundary")->required();
  comp_cmd->add_option("--mode", mode, "plain or extended");
  comp_cmd->add_option("--out", out, "write the complement graph here");
  comp_cmd->callback([&] { run = [&] { return cmd_complement(graph, cls, mode, out); }; });

  auto* enum_cmd = app.add_subcommand("enumerate-maps", "list every map between two graphs");
  enum_cmd->add_option("--source", source, "graph document")->required();
  enum_cmd->add_option("--target", target, "graph document")->required();
  enum_cmd->add_option("--mode", mode, "plain or extended");
  enum_cmd->add_option("--category", category, "keep maps in this category");
  caps_flags(enum_cmd, false);
  enum_cmd->callback([&] { run = [&] { return cmd_enumerate(source, target, mode, caps, category); }; });

  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive agreement checks over the corpus");
  oracle_cmd->add_option("--equivalence", equivalence, "new-old or tables")->required();
  oracle_cmd->add_option("--mode", modes, "plain, extended or both");
  caps_flags(oracle_cmd, true);
  oracle_cmd->callback([&] { run = [&] { return cmd_oracle(equivalence, caps, modes); }; });

  auto* tree_cmd = app.add_subcommand("tree-check", "check a map between trees by subtrees");
  tree_cmd->add_option("--map", map, "map document")->required();
  tree_cmd->callback([&] { run = [&] { return cmd_tree_check(map); }; });

  auto* prop_cmd = app.add_subcommand("properadic-check", "check a map between directed acyclic graphs");
  prop_cmd->add_option("--map", map, "map document with orientations")->required();
  prop_cmd->callback([&] { run = [&] { return cmd_properadic_check(map); }; });

  auto* segal_cmd = app.add_subcommand("segal", "presheaves on a catalog");
  segal_cmd->require_subcommand(1);
  auto* make_cmd = segal_cmd->add_subcommand("make", "write a presheaf document");
  make_cmd->add_option("--category", category, "catalog kind")->required();
  make_cmd->add_option("--kind", kind, "terminal, orientation, representable:NAME or random:SEED")->required();
  make_cmd->add_option("--out", out, "write the presheaf here");
  make_cmd->callback([&] { run = [&] { return segal_make(category, kind, out); }; });
  auto* scheck_cmd = segal_cmd->add_subcommand("check", "check the Segal condition");
  scheck_cmd->add_option("--presheaf", presheaf, "presheaf document")->required();
  scheck_cmd->add_flag("--flat", flat, "only stars are elementary");
  scheck_cmd->callback([&] { run = [&] { return segal_check(presheaf, flat); }; });
  auto* restrict_cmd = segal_cmd->add_subcommand("restrict", "restrict along an inclusion");
  restrict_cmd->add_option("--presheaf", presheaf, "presheaf document")->required();
  restrict_cmd->add_option("--from", other, "category to restrict to")->required();
  restrict_cmd->add_option("--out", out, "write the result here");
  restrict_cmd->callback([&] { run = [&] { return segal_move(presheaf, other, false, out); }; });
  auto* lke_cmd = segal_cmd->add_subcommand("lke", "left Kan extension along a discrete fibration");
  lke_cmd->add_option("--presheaf", presheaf, "presheaf document")->required();
  lke_cmd->add_option("--to", other, "target category")->required();
  lke_cmd->add_option("--out", out, "write the result here");
  lke_cmd->callback([&] { run = [&] { return segal_move(presheaf, other, true, out); }; });

  auto* dot_cmd = app.add_subcommand("dot", "render a graph as DOT");
  dot_cmd->add_option("--graph", graph, "graph document")->required();
  dot_cmd->add_flag("!--no-orientation", oriented_dot, "ignore the orientation field");
  dot_cmd->callback([&] {
    run = [&] {
      GraphDocument d = load_graph(graph);
      std::string name = std::filesystem::path(graph).stem().string();
      std::cout << to_dot(d.graph, oriented_dot ? d.orientation : std::nullopt, name);
      return Result{json(), kOk};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  auto fail = [](const std::string& kind_name, const std::string& what, json extra = json::object()) {
    json doc = {{"ok", false}, {"error", kind_name}, {"detail", what}};
    doc.update(extra);
    std::cout << doc.dump(2) << "\n";
    std::cerr << "graphcat: " << what << "\n";
    return kUsage;
  };
  try {
    Result r = (*run)();
    if (!r.doc.is_null()) std::cout << r.doc.dump(2) << "\n";
    return r.status;
  } catch (const ParseError& e) {
    return fail("parse", e.what(), {{"line", e.line()}, {"field", e.field()}});
  } catch (const UsageError& e) {
    return fail("usage", e.what());
  } catch (const CapExceeded& e) {
    return fail("caps", e.what());
  } catch (const GraphError& e) {
    return fail("input", e.what());
  } catch (const std::exception& e) {
    return fail("input", e.what());
  }
}
