#include "graphcat/corpus.hpp"

namespace graphcat {

std::vector<NamedGraph> standard_corpus() {
  std::vector<NamedGraph> out;
  for (int n = 0; n <= 4; ++n) out.push_back({"star" + std::to_string(n), star(n)});
  out.push_back({"edge", edge_graph()});
  out.push_back({"line2", line_graph(2)});
  out.push_back({"line3", line_graph(3)});
  out.push_back({"loop1", loop_with_one_vertex()});
  out.push_back({"cycle2", cycle_graph(2)});
  out.push_back({"cycle3", cycle_graph(3)});
  out.push_back({"no_joins", no_joins_graph()});
  out.push_back({"loop_leg", GraphBuilder().edge("l1", "v", "l2", "v").edge("x", "v", "x†", "").build()});
  out.push_back({"tadpole", GraphBuilder()
                                .edge("l1", "v", "l2", "v")
                                .edge("p", "v", "q", "w")
                                .edge("y", "w", "y†", "")
                                .build()});
  out.push_back({"nodeless_loop", nodeless_loop(), true});
  return out;
}

std::vector<NamedGraph> tree_corpus() {
  std::vector<NamedGraph> out;
  for (const auto& ng : standard_corpus())
    if (is_tree(ng.graph)) out.push_back(ng);
  out.push_back({"fork", GraphBuilder()
                             .edge("a", "v", "a†", "")
                             .edge("b", "v", "b†", "")
                             .edge("ev", "v", "ew", "w")
                             .edge("c", "w", "c†", "")
                             .build()});
  out.push_back({"twig", GraphBuilder().edge("ev", "v", "ew", "w").edge("c", "w", "c†", "").build()});
  return out;
}

Graph no_joins_graph() {
  return GraphBuilder()
      .edge("x", "v", "x†", "")
      .edge("e1v", "v", "e1w", "w")
      .edge("e2v", "v", "e2w", "w")
      .edge("y", "w", "y†", "")
      .build();
}

Graph counterexample_target() {
  return GraphBuilder().edge("e0v", "v", "e0w", "w").edge("e1v", "v", "e1w", "w").build();
}

Graph counterexample_source() {
  return GraphBuilder()
      .edge("e0v", "v", "e0v†", "")
      .edge("e0w", "w", "e0w†", "")
      .edge("e1v", "v", "e1w", "w")
      .build();
}

Graph not_structured_graph() {
  return GraphBuilder()
      .edge("top", "", "top'", "t")
      .edge("d", "t", "d'", "b")
      .edge("e0", "t", "e0'", "m")
      .edge("e1", "m", "e1'", "b")
      .edge("side", "", "side'", "m")
      .edge("out", "m", "out'", "")
      .edge("bot", "b", "bot'", "")
      .build();
}

}  // namespace graphcat
