#pragma once

#include <string>
#include <vector>

#include "graphcat/corpus.hpp"
#include "graphcat/graphical_maps.hpp"

namespace graphcat {

struct OracleReport {
  int graphs = 0;  // corpus graphs within the caps
  long pairs = 0;
  long maps = 0;
  long triples = 0;
  long mismatches = 0;
  std::vector<std::string> failures;  // the first few

  bool ok() const { return mismatches == 0; }
};

// On every ordered pair of corpus graphs within the caps, in each mode: the
// class-table maps and the vertex-image maps correspond one to one through
// to_classical and from_classical, and on every composable pair of maps the
// two compositions agree.
OracleReport check_presentations(const std::vector<NamedGraph>& corpus, EnumerationCaps caps,
                                 const std::vector<Mode>& modes, bool compositions = true);

// Enumeration through vertex images against the direct table search.
OracleReport check_table_search(const std::vector<NamedGraph>& corpus, EnumerationCaps caps,
                                const std::vector<Mode>& modes);

}  // namespace graphcat
