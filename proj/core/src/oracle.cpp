#include "graphcat/oracle.hpp"

#include <algorithm>

namespace graphcat {

namespace {

constexpr std::size_t kMaxFailures = 10;

std::vector<const NamedGraph*> within_caps(const std::vector<NamedGraph>& corpus, EnumerationCaps caps, Mode mode) {
  std::vector<const NamedGraph*> out;
  for (const auto& ng : corpus) {
    if (mode == Mode::plain && ng.extended_only) continue;
    if (ng.graph.num_vertices() > caps.max_vertices || ng.graph.num_arcs() > caps.max_arcs) continue;
    out.push_back(&ng);
  }
  return out;
}

void note(OracleReport& r, const std::string& what) {
  ++r.mismatches;
  if (r.failures.size() < kMaxFailures) r.failures.push_back(what);
}

const char* mode_name(Mode m) { return m == Mode::plain ? "plain" : "extended"; }

}  // namespace

OracleReport check_presentations(const std::vector<NamedGraph>& corpus, EnumerationCaps caps,
                                 const std::vector<Mode>& modes, bool compositions) {
  OracleReport r;
  r.graphs = static_cast<int>(within_caps(corpus, caps, Mode::extended).size());
  for (Mode mode : modes) {
    auto graphs = within_caps(corpus, caps, mode);
    const std::size_t n = graphs.size();
    std::vector<std::vector<NewGraphMap>> hom(n * n);
    std::vector<std::vector<ClassicalMap>> classical(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::string where = graphs[i]->name + " -> " + graphs[j]->name + " (" + mode_name(mode) + ")";
        auto& maps = hom[i * n + j];
        maps = enumerate_maps(graphs[i]->graph, graphs[j]->graph, mode, caps);
        std::vector<ClassicalMap> direct = enumerate_classical_maps(graphs[i]->graph, graphs[j]->graph, mode, caps);
        ++r.pairs;
        r.maps += static_cast<long>(maps.size());
        auto& image = classical[i * n + j];
        for (const NewGraphMap& m : maps) {
          ClassicalMap c = to_classical(m);
          if (!check_classical(c, mode)) note(r, where + ": image is not a map");
          if (from_classical(c, mode) != m) note(r, where + ": round trip through vertex images differs");
          image.push_back(std::move(c));
        }
        std::vector<ClassicalMap> sorted = image;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) note(r, where + ": not injective");
        if (sorted != direct) note(r, where + ": images differ from the vertex-image hom-set");
        for (const ClassicalMap& c : direct)
          if (!std::binary_search(maps.begin(), maps.end(), from_classical(c, mode)))
            note(r, where + ": a vertex-image map has no table counterpart");
      }
    }
    if (!compositions) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const auto& first = hom[i * n + j];
          const auto& second = hom[j * n + k];
          const auto& direct = hom[i * n + k];
          for (std::size_t a = 0; a < first.size(); ++a)
            for (std::size_t b = 0; b < second.size(); ++b) {
              ++r.triples;
              NewGraphMap gf = compose(second[b], first[a]);
              if (!std::binary_search(direct.begin(), direct.end(), gf) ||
                  to_classical(gf) != compose(classical[j * n + k][b], classical[i * n + j][a], mode))
                note(r, graphs[i]->name + " -> " + graphs[j]->name + " -> " + graphs[k]->name + " (" +
                            mode_name(mode) + "): compositions differ");
            }
        }
  }
  return r;
}

OracleReport check_table_search(const std::vector<NamedGraph>& corpus, EnumerationCaps caps,
                                const std::vector<Mode>& modes) {
  OracleReport r;
  r.graphs = static_cast<int>(within_caps(corpus, caps, Mode::extended).size());
  for (Mode mode : modes) {
    auto graphs = within_caps(corpus, caps, mode);
    for (const auto* s : graphs)
      for (const auto* t : graphs) {
        ++r.pairs;
        auto maps = enumerate_maps(s->graph, t->graph, mode, caps);
        r.maps += static_cast<long>(maps.size());
        if (enumerate_maps_by_tables(s->graph, t->graph, mode, caps) != maps)
          note(r, s->name + " -> " + t->name + " (" + mode_name(mode) + "): table search differs");
      }
  }
  return r;
}

}  // namespace graphcat
