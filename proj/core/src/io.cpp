#include "graphcat/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace graphcat {

namespace {

constexpr std::string_view kVersion = "v1";
constexpr std::string_view kForbidden = "=,/:#";

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

void check_name(const std::string& name) {
  if (name.empty()) throw GraphError("io: empty name");
  for (char ch : name)
    if (std::isspace(static_cast<unsigned char>(ch)) || kForbidden.find(ch) != std::string_view::npos)
      throw GraphError("io: name '" + name + "' cannot be written");
}

[[noreturn]] void fail(const DocumentEntry& e, const std::string& what) { throw ParseError(e.line, e.key, what); }

std::pair<std::string, std::string> split_item(const DocumentEntry& e, const std::string& item) {
  auto pos = item.find('=');
  if (pos == std::string::npos) fail(e, "expected key=value, got '" + item + "'");
  return {item.substr(0, pos), item.substr(pos + 1)};
}

int parse_int(const DocumentEntry& e, const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(e, "expected an integer, got '" + s + "'");
  return v;
}

std::vector<int> parse_ints(const DocumentEntry& e) {
  std::vector<int> out;
  for (const auto& w : split_ws(e.value)) out.push_back(parse_int(e, w));
  return out;
}

std::string ints(const std::vector<int>& v) {
  std::vector<std::string> w;
  for (int x : v) w.push_back(std::to_string(x));
  return join(w, " ");
}

}  // namespace

ParseError::ParseError(int line, std::string field, const std::string& what)
    : GraphError("line " + std::to_string(line) + (field.empty() ? "" : ", field '" + field + "'") + ": " + what),
      line_(line),
      field_(std::move(field)) {}

Document Document::parse(std::string_view text, const std::string& expected_kind) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  std::optional<Document> doc;
  std::set<std::string> seen;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (!doc) {
      auto words = split_ws(s);
      if (words.size() != 3 || words[0] != "graphcat")
        throw ParseError(line, "", "expected header 'graphcat " + expected_kind + " v1'");
      if (words[1] != expected_kind)
        throw ParseError(line, "", "expected a " + expected_kind + " document, got " + words[1]);
      if (words[2] != kVersion) throw ParseError(line, "", "unsupported version " + words[2]);
      doc.emplace(words[1]);
      doc->header_line_ = line;
      continue;
    }
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError(line, "", "expected 'key: value'");
    DocumentEntry e{trim(std::string_view(s).substr(0, colon)), trim(std::string_view(s).substr(colon + 1)), line};
    if (e.key.empty()) throw ParseError(line, "", "empty key");
    if (!seen.insert(e.key).second) throw ParseError(line, e.key, "field given twice");
    doc->entries_.push_back(std::move(e));
  }
  if (!doc) throw ParseError(line, "", "missing header 'graphcat " + expected_kind + " v1'");
  return *doc;
}

void Document::set(const std::string& key, const std::string& value) {
  for (auto& e : entries_)
    if (e.key == key) {
      e.value = value;
      return;
    }
  entries_.push_back({key, value, 0});
}

const DocumentEntry* Document::find(const std::string& key) const {
  for (const auto& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

const DocumentEntry& Document::require(const std::string& key) const {
  if (const auto* e = find(key)) return *e;
  throw ParseError(header_line_, key, "missing field");
}

Document Document::section(const std::string& prefix) const {
  Document out(kind_);
  out.header_line_ = header_line_;
  const std::string p = prefix + ".";
  for (const auto& e : entries_)
    if (e.key.starts_with(p)) out.entries_.push_back({e.key.substr(p.size()), e.value, e.line});
  return out;
}

void Document::append_section(const std::string& prefix, const Document& sub) {
  for (const auto& e : sub.entries_) set(prefix + "." + e.key, e.value);
}

std::string Document::emit() const {
  std::string out = "graphcat " + kind_ + " " + std::string(kVersion) + "\n";
  for (const auto& e : entries_) out += e.key + ":" + (e.value.empty() ? "" : " " + e.value) + "\n";
  return out;
}

// Graphs

Document graph_document(const Graph& g, const std::optional<Orientation>& x) {
  Document doc("graph");
  std::vector<std::string> arcs, inv, verts, nbhd;
  for (int a = 0; a < g.num_arcs(); ++a) {
    check_name(g.arc_name(a));
    arcs.push_back(g.arc_name(a));
    int b = g.dagger(a);
    if (b < 0) throw GraphError("io: arc '" + g.arc_name(a) + "' has no partner");
    if (a < b) inv.push_back(g.arc_name(a) + "=" + g.arc_name(b));
    if (a == b) throw GraphError("io: arc '" + g.arc_name(a) + "' is fixed by the involution");
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    check_name(g.vertex_name(v));
    verts.push_back(g.vertex_name(v));
    std::vector<std::string> darts;
    for (int d : g.nbhd(v)) darts.push_back(g.arc_name(d));
    nbhd.push_back(g.vertex_name(v) + "=" + join(darts, ","));
  }
  doc.set("arcs", join(arcs, " "));
  doc.set("involution", join(inv, " "));
  doc.set("vertices", join(verts, " "));
  doc.set("nbhd", join(nbhd, " "));
  if (g.boundary_explicit()) {
    std::vector<std::string> b;
    for (int a : g.boundary()) b.push_back(g.arc_name(a));
    doc.set("boundary", join(b, " "));
  }
  if (x) {
    if (static_cast<int>(x->sign.size()) != g.num_arcs()) throw GraphError("io: orientation does not fit the graph");
    std::vector<std::string> s;
    for (int a = 0; a < g.num_arcs(); ++a) s.push_back(g.arc_name(a) + (x->sign[a] > 0 ? "=+" : "=-"));
    doc.set("orientation", join(s, " "));
  }
  return doc;
}

GraphDocument read_graph(const Document& doc) {
  GraphSpec spec;
  const auto& arcs = doc.require("arcs");
  std::set<std::string> arc_set;
  for (const auto& a : split_ws(arcs.value)) {
    if (!arc_set.insert(a).second) fail(arcs, "arc '" + a + "' listed twice");
    spec.arcs.push_back(a);
  }
  auto known_arc = [&](const DocumentEntry& e, const std::string& a) {
    if (!arc_set.count(a)) fail(e, "unknown arc '" + a + "'");
  };

  const auto& inv = doc.require("involution");
  std::set<std::string> covered;
  for (const auto& item : split_ws(inv.value)) {
    auto [a, b] = split_item(inv, item);
    known_arc(inv, a);
    known_arc(inv, b);
    for (const auto& x : {a, b})
      if (!covered.insert(x).second) fail(inv, "arc '" + x + "' listed more than once");
    spec.involution.emplace_back(a, b);
    if (a != b) spec.involution.emplace_back(b, a);
  }
  for (const auto& a : spec.arcs)
    if (!covered.count(a)) fail(inv, "arc '" + a + "' missing from the involution");

  std::set<std::string> vertex_set;
  if (const auto* verts = doc.find("vertices")) {
    for (const auto& v : split_ws(verts->value)) {
      if (!vertex_set.insert(v).second) fail(*verts, "vertex '" + v + "' listed twice");
      spec.vertices.push_back(v);
    }
  }
  std::set<std::string> with_nbhd;
  std::set<std::string> attached;
  if (const auto* nb = doc.find("nbhd")) {
    for (const auto& item : split_ws(nb->value)) {
      auto [v, rest] = split_item(*nb, item);
      if (!vertex_set.count(v)) fail(*nb, "unknown vertex '" + v + "'");
      if (!with_nbhd.insert(v).second) fail(*nb, "vertex '" + v + "' listed twice");
      std::vector<std::string> darts = split_on(rest, ',');
      for (const auto& d : darts) {
        known_arc(*nb, d);
        if (!attached.insert(d).second) fail(*nb, "dart '" + d + "' attached twice");
      }
      spec.nbhd.emplace_back(v, darts);
    }
  }
  for (const auto& v : spec.vertices)
    if (!with_nbhd.count(v)) spec.nbhd.emplace_back(v, std::vector<std::string>{});

  if (const auto* b = doc.find("boundary")) {
    std::vector<std::string> list = split_ws(b->value);
    std::set<std::string> seen;
    for (const auto& a : list) {
      known_arc(*b, a);
      if (!seen.insert(a).second) fail(*b, "arc '" + a + "' listed twice");
    }
    spec.boundary = list;
  }

  GraphDocument out;
  try {
    out.graph = Graph(spec);
  } catch (const ParseError&) {
    throw;
  } catch (const GraphError& e) {
    throw ParseError(doc.header_line(), "", e.what());
  }

  if (const auto* o = doc.find("orientation")) {
    const Graph& g = out.graph;
    std::vector<int> sign(g.num_arcs(), 0);
    for (const auto& item : split_ws(o->value)) {
      auto [a, s] = split_item(*o, item);
      known_arc(*o, a);
      int v = 0;
      if (s == "+" || s == "+1" || s == "1") v = 1;
      else if (s == "-" || s == "-1") v = -1;
      else fail(*o, "sign of '" + a + "' must be + or -");
      int i = g.arc(a);
      if (sign[i] != 0) fail(*o, "arc '" + a + "' signed twice");
      sign[i] = v;
    }
    for (int a = 0; a < g.num_arcs(); ++a) {
      int b = g.dagger(a);
      if (b < 0) continue;
      if (sign[a] == 0 && sign[b] != 0) sign[a] = -sign[b];
      if (sign[b] == 0 && sign[a] != 0) sign[b] = -sign[a];
      if (sign[a] == 0) fail(*o, "arc '" + g.arc_name(a) + "' has no sign");
      if (sign[a] != -sign[b]) fail(*o, "arcs '" + g.arc_name(a) + "' and '" + g.arc_name(b) + "' need opposite signs");
    }
    out.orientation = Orientation{sign};
  }
  return out;
}

std::string emit_graph(const Graph& g, const std::optional<Orientation>& x) { return graph_document(g, x).emit(); }

GraphDocument parse_graph(std::string_view text) { return read_graph(Document::parse(text, "graph")); }

// Classes

std::string class_name(const Graph& g, int emb_class) {
  const EmbClass& key = emb_poset(g).key(emb_class);
  std::vector<std::string> v, b;
  for (int x : key.vertices) v.push_back(g.vertex_name(x));
  for (int a : key.boundary) b.push_back(g.arc_name(a));
  return join(v, ",") + "/" + join(b, ",");
}

int parse_class_name(const Graph& g, const std::string& name) {
  auto slash = name.find('/');
  if (slash == std::string::npos) throw GraphError("class '" + name + "' needs a '/' between vertices and boundary");
  EmbClass key;
  for (const auto& v : split_on(name.substr(0, slash), ',')) {
    auto i = g.find_vertex(v);
    if (!i) throw GraphError("class '" + name + "': unknown vertex '" + v + "'");
    key.vertices.push_back(*i);
  }
  for (const auto& a : split_on(name.substr(slash + 1), ',')) {
    auto i = g.find_arc(a);
    if (!i) throw GraphError("class '" + name + "': unknown arc '" + a + "'");
    key.boundary.push_back(*i);
  }
  std::sort(key.vertices.begin(), key.vertices.end());
  std::sort(key.boundary.begin(), key.boundary.end());
  auto c = emb_poset(g).find(key);
  if (!c) throw GraphError("'" + name + "' is not an embedding class");
  return *c;
}

std::string emit_class(const Graph& g, int emb_class) {
  Document doc("class");
  doc.append_section("graph", graph_document(g));
  doc.set("class", class_name(g, emb_class));
  return doc.emit();
}

ClassDocument parse_class(std::string_view text) {
  Document doc = Document::parse(text, "class");
  ClassDocument out;
  out.graph = read_graph(doc.section("graph")).graph;
  const auto& e = doc.require("class");
  try {
    out.emb_class = parse_class_name(out.graph, e.value);
  } catch (const GraphError& err) {
    fail(e, err.what());
  }
  return out;
}

// Maps

Document map_document(const NewGraphMap& m, const std::optional<Orientation>& source,
                      const std::optional<Orientation>& target) {
  Document doc("map");
  doc.append_section("source", graph_document(m.source, source));
  doc.append_section("target", graph_document(m.target, target));
  std::vector<std::string> arcs, classes;
  for (int a = 0; a < m.source.num_arcs(); ++a) arcs.push_back(m.source.arc_name(a) + "=" + m.target.arc_name(m.arcs[a]));
  for (int c = 0; c < static_cast<int>(m.classes.size()); ++c)
    classes.push_back(class_name(m.source, c) + "=" + class_name(m.target, m.classes[c]));
  doc.set("arcs", join(arcs, " "));
  doc.set("classes", join(classes, " "));
  return doc;
}

MapDocument read_map(const Document& doc) {
  GraphDocument s = read_graph(doc.section("source"));
  GraphDocument t = read_graph(doc.section("target"));
  MapDocument out;
  out.source_orientation = s.orientation;
  out.target_orientation = t.orientation;
  out.map.source = s.graph;
  out.map.target = t.graph;

  const auto& arcs = doc.require("arcs");
  out.map.arcs.assign(s.graph.num_arcs(), -1);
  for (const auto& item : split_ws(arcs.value)) {
    auto [a, b] = split_item(arcs, item);
    auto i = s.graph.find_arc(a);
    auto j = t.graph.find_arc(b);
    if (!i) fail(arcs, "unknown source arc '" + a + "'");
    if (!j) fail(arcs, "unknown target arc '" + b + "'");
    if (out.map.arcs[*i] != -1) fail(arcs, "source arc '" + a + "' mapped twice");
    out.map.arcs[*i] = *j;
  }
  for (int a = 0; a < s.graph.num_arcs(); ++a)
    if (out.map.arcs[a] == -1) fail(arcs, "source arc '" + s.graph.arc_name(a) + "' is not mapped");

  auto class_of_name = [&](const DocumentEntry& e, const Graph& g, const std::string& name) {
    try {
      return parse_class_name(g, name);
    } catch (const GraphError& err) {
      fail(e, err.what());
    }
  };

  if (const auto* cl = doc.find("classes")) {
    const EmbPoset& p = emb_poset(s.graph);
    out.map.classes.assign(p.size(), -1);
    for (const auto& item : split_ws(cl->value)) {
      auto [h, k] = split_item(*cl, item);
      int i = class_of_name(*cl, s.graph, h);
      if (out.map.classes[i] != -1) fail(*cl, "class '" + h + "' mapped twice");
      out.map.classes[i] = class_of_name(*cl, t.graph, k);
    }
    for (int c = 0; c < p.size(); ++c)
      if (out.map.classes[c] == -1) fail(*cl, "class '" + class_name(s.graph, c) + "' is not mapped");
    return out;
  }

  const auto* verts = doc.find("vertices");
  if (!verts) throw ParseError(doc.header_line(), "classes", "missing field (or a vertices table)");
  Mode mode = Mode::plain;
  if (const auto* me = doc.find("mode")) {
    if (me->value == "extended") mode = Mode::extended;
    else if (me->value != "plain") fail(*me, "mode must be plain or extended");
  }
  ClassicalMap cm{s.graph, t.graph, out.map.arcs, std::vector<int>(s.graph.num_vertices(), -1)};
  for (const auto& item : split_ws(verts->value)) {
    auto [v, k] = split_item(*verts, item);
    auto i = s.graph.find_vertex(v);
    if (!i) fail(*verts, "unknown source vertex '" + v + "'");
    if (cm.vertices[*i] != -1) fail(*verts, "vertex '" + v + "' mapped twice");
    cm.vertices[*i] = class_of_name(*verts, t.graph, k);
  }
  for (int v = 0; v < s.graph.num_vertices(); ++v)
    if (cm.vertices[v] == -1) fail(*verts, "vertex '" + s.graph.vertex_name(v) + "' is not mapped");
  Status st = check_classical(cm, mode);
  if (!st.ok()) fail(*verts, "not a graphical map (" + st.message() + ")");
  out.map = from_classical(cm, mode);
  return out;
}

std::string emit_map(const NewGraphMap& m, const std::optional<Orientation>& source,
                     const std::optional<Orientation>& target) {
  return map_document(m, source, target).emit();
}

MapDocument parse_map(std::string_view text) { return read_map(Document::parse(text, "map")); }

// Catalogs and presheaves

Document catalog_document(const Catalog& c) {
  Document doc("catalog");
  doc.set("kind", to_string(c.kind()));
  doc.set("max_vertices", std::to_string(c.caps().max_vertices));
  doc.set("max_arcs", std::to_string(c.caps().max_arcs));
  std::vector<std::string> names, ext;
  for (const auto& ng : c.base()) {
    check_name(ng.name);
    names.push_back(ng.name);
    if (ng.extended_only) ext.push_back(ng.name);
  }
  doc.set("base", join(names, " "));
  doc.set("extended_only", join(ext, " "));
  for (const auto& ng : c.base()) doc.append_section("base." + ng.name, graph_document(ng.graph));
  std::vector<std::string> objects;
  for (int o = 0; o < c.num_objects(); ++o) objects.push_back(c.object(o).name);
  doc.set("objects", join(objects, " "));
  doc.set("morphisms", std::to_string(c.num_morphisms()));
  return doc;
}

Catalog read_catalog(const Document& doc) {
  const auto& k = doc.require("kind");
  auto kind = parse_category(k.value);
  if (!kind) fail(k, "unknown category '" + k.value + "'");
  EnumerationCaps caps;
  if (const auto* e = doc.find("max_vertices")) caps.max_vertices = parse_int(*e, e->value);
  if (const auto* e = doc.find("max_arcs")) caps.max_arcs = parse_int(*e, e->value);
  std::set<std::string> ext;
  if (const auto* e = doc.find("extended_only"))
    for (const auto& n : split_ws(e->value)) ext.insert(n);
  std::vector<NamedGraph> base;
  const auto& b = doc.require("base");
  std::set<std::string> seen;
  for (const auto& n : split_ws(b.value)) {
    if (!seen.insert(n).second) fail(b, "base graph '" + n + "' listed twice");
    Document sub = doc.section("base." + n);
    if (sub.entries().empty()) fail(b, "no fields for base graph '" + n + "'");
    base.push_back({n, read_graph(sub).graph, ext.count(n) > 0});
  }
  Catalog c = [&] {
    try {
      return Catalog::build(*kind, base, caps);
    } catch (const CapExceeded& e) {
      fail(b, e.what());
    } catch (const GraphError& e) {
      fail(b, e.what());
    }
  }();
  if (const auto* e = doc.find("objects")) {
    std::vector<std::string> objects;
    for (int o = 0; o < c.num_objects(); ++o) objects.push_back(c.object(o).name);
    if (split_ws(e->value) != objects) fail(*e, "rebuilt catalog has different objects");
  }
  if (const auto* e = doc.find("morphisms"))
    if (parse_int(*e, e->value) != c.num_morphisms())
      fail(*e, "rebuilt catalog has " + std::to_string(c.num_morphisms()) + " morphisms");
  return c;
}

std::string emit_catalog(const Catalog& c) { return catalog_document(c).emit(); }

Catalog parse_catalog(std::string_view text) { return read_catalog(Document::parse(text, "catalog")); }

std::string emit_presheaf(const Catalog& c, const Presheaf& x) {
  Document doc("presheaf");
  doc.append_section("catalog", catalog_document(c));
  doc.set("sizes", ints(x.sizes));
  for (int m = 0; m < c.num_morphisms(); ++m) doc.set("restriction." + std::to_string(m), ints(x.restriction.at(m)));
  return doc.emit();
}

PresheafDocument parse_presheaf(std::string_view text) {
  Document doc = Document::parse(text, "presheaf");
  PresheafDocument out{read_catalog(doc.section("catalog")), {}};
  const Catalog& c = out.catalog;
  const auto& sz = doc.require("sizes");
  out.presheaf.sizes = parse_ints(sz);
  if (static_cast<int>(out.presheaf.sizes.size()) != c.num_objects())
    fail(sz, "expected " + std::to_string(c.num_objects()) + " sizes");
  for (int s : out.presheaf.sizes)
    if (s < 0) fail(sz, "negative size");
  out.presheaf.restriction.resize(c.num_morphisms());
  for (int m = 0; m < c.num_morphisms(); ++m) {
    const auto& e = doc.require("restriction." + std::to_string(m));
    auto r = parse_ints(e);
    const auto& mor = c.morphism(m);
    if (static_cast<int>(r.size()) != out.presheaf.sizes[mor.target])
      fail(e, "expected one entry per element of " + c.object(mor.target).name);
    for (int v : r)
      if (v < 0 || v >= out.presheaf.sizes[mor.source]) fail(e, "element out of range for " + c.object(mor.source).name);
    out.presheaf.restriction[m] = std::move(r);
  }
  return out;
}

// DOT

std::string to_dot(const Graph& g, const std::optional<Orientation>& x, const std::string& name) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n";
  out << "  node [shape=circle];\n";
  for (int v = 0; v < g.num_vertices(); ++v) out << "  " << quote("v:" + g.vertex_name(v)) << " [label=" << quote(g.vertex_name(v)) << "];\n";
  // Ends of each arc: its vertex for a dart, otherwise a point node.
  auto end = [&](int a, int e) {
    if (g.is_dart(a)) return "v:" + g.vertex_name(g.attach(a));
    if (g.in_boundary(a)) return "b:" + g.arc_name(a);
    return "e:" + std::to_string(e);
  };
  std::set<std::string> points;
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [a, b] = g.edges()[e];
    for (int arc : {a, b}) {
      std::string p = end(arc, e);
      if (!g.is_dart(arc) && points.insert(p).second) out << "  " << quote(p) << " [shape=point];\n";
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [a, b] = g.edges()[e];
    std::string attrs;
    if (x) {
      if (x->sign[a] < 0) std::swap(a, b);
    } else {
      attrs = ", dir=none";
    }
    out << "  " << quote(end(a, e)) << " -> " << quote(end(b, e)) << " [label="
        << quote(g.arc_name(a) + "|" + g.arc_name(b)) << attrs << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace graphcat
