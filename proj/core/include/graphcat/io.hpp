#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphcat/directed.hpp"
#include "graphcat/graphical_maps.hpp"
#include "graphcat/segal.hpp"

namespace graphcat {

// Text documents are a header line "graphcat <kind> v1" followed by
// "key: value" lines. Blank lines and lines starting with '#' are skipped.
// Lists are whitespace separated; tables are "key=value" items, with ','
// separating list values. Names may not contain whitespace or any of
// = , / : #
class ParseError : public GraphError {
 public:
  ParseError(int line, std::string field, const std::string& what);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

struct DocumentEntry {
  std::string key;
  std::string value;
  int line = 0;
};

class Document {
 public:
  // Throws ParseError on a bad header, a line without ':' or a repeated key.
  static Document parse(std::string_view text, const std::string& expected_kind);

  explicit Document(std::string kind) : kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }
  int header_line() const { return header_line_; }

  void set(const std::string& key, const std::string& value);
  const DocumentEntry* find(const std::string& key) const;
  const DocumentEntry& require(const std::string& key) const;  // throws ParseError
  // Entries under "prefix.", with the prefix stripped.
  Document section(const std::string& prefix) const;
  void append_section(const std::string& prefix, const Document& sub);
  const std::vector<DocumentEntry>& entries() const { return entries_; }

  std::string emit() const;

 private:
  std::string kind_;
  int header_line_ = 1;
  std::vector<DocumentEntry> entries_;
};

struct GraphDocument {
  Graph graph;
  std::optional<Orientation> orientation;

  bool operator==(const GraphDocument&) const = default;
};

// boundary is written only for graphs built with an explicit one.
Document graph_document(const Graph& g, const std::optional<Orientation>& x = std::nullopt);
GraphDocument read_graph(const Document& doc);
std::string emit_graph(const Graph& g, const std::optional<Orientation>& x = std::nullopt);
GraphDocument parse_graph(std::string_view text);

// "v,w/a,b": vertex names, then the boundary arc names.
std::string class_name(const Graph& g, int emb_class);
// Throws GraphError for unknown names or keys that are not classes.
int parse_class_name(const Graph& g, const std::string& name);

struct ClassDocument {
  Graph graph;
  int emb_class = -1;

  bool operator==(const ClassDocument&) const = default;
};
std::string emit_class(const Graph& g, int emb_class);
ClassDocument parse_class(std::string_view text);

struct MapDocument {
  NewGraphMap map;
  std::optional<Orientation> source_orientation;
  std::optional<Orientation> target_orientation;

  bool operator==(const MapDocument&) const = default;
};

// Written with the full class table. A document may instead give a
// "vertices" table (vertex -> class of the target), which is completed with
// from_classical in the mode named by the optional "mode" field.
Document map_document(const NewGraphMap& m, const std::optional<Orientation>& source = std::nullopt,
                      const std::optional<Orientation>& target = std::nullopt);
MapDocument read_map(const Document& doc);
std::string emit_map(const NewGraphMap& m, const std::optional<Orientation>& source = std::nullopt,
                     const std::optional<Orientation>& target = std::nullopt);
MapDocument parse_map(std::string_view text);

// Stores the kind, caps and base graphs plus the object names and morphism
// count. Reading rebuilds the catalog and checks that both still match.
Document catalog_document(const Catalog& c);
Catalog read_catalog(const Document& doc);
std::string emit_catalog(const Catalog& c);
Catalog parse_catalog(std::string_view text);

struct PresheafDocument {
  Catalog catalog;
  Presheaf presheaf;
};
std::string emit_presheaf(const Catalog& c, const Presheaf& x);
// Shapes are checked against the catalog; functoriality is not.
PresheafDocument parse_presheaf(std::string_view text);

// Vertices are circles, internal edges join them, boundary arcs end at a point
// node, and the nodeless loop is a point with a self loop. With an
// orientation each edge points from its +1 arc to its -1 arc.
std::string to_dot(const Graph& g, const std::optional<Orientation>& x = std::nullopt,
                   const std::string& name = "G");

// Throws GraphError when the file cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace graphcat
