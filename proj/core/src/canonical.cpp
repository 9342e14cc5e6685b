#include "graphcat/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace graphcat {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

struct Best {
  EdgeList edges;
  std::vector<int> position;  // vertex -> position
  bool set = false;
};

EdgeList encode(const Graph& g, const std::vector<int>& position) {
  const int n = g.num_vertices();
  EdgeList out;
  for (const Edge& e : g.edges()) {
    int x = g.is_dart(e.first) ? position[g.attach(e.first)] : n;
    int y = g.is_dart(e.second) ? position[g.attach(e.second)] : n;
    out.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Best search(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<std::tuple<int, int, int>> sig(n);
  for (int v = 0; v < n; ++v) {
    int loops = 0;
    int legs = 0;
    for (int d : g.nbhd(v)) {
      int p = g.dagger(d);
      if (g.is_dart(p) && g.attach(p) == v) ++loops;
      if (!g.is_dart(p)) ++legs;
    }
    sig[v] = {static_cast<int>(g.nbhd(v).size()), loops, legs};
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
  std::vector<std::pair<int, int>> groups;  // [begin, end) in order
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && sig[order[j]] == sig[order[i]]) ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  Best best;
  std::vector<int> position(n);
  auto rec = [&](auto&& self, std::size_t gi) -> void {
    if (gi == groups.size()) {
      for (int i = 0; i < n; ++i) position[order[i]] = i;
      EdgeList code = encode(g, position);
      if (!best.set || code < best.edges) best = {code, position, true};
      return;
    }
    auto [b, e] = groups[gi];
    std::sort(order.begin() + b, order.begin() + e);
    do {
      self(self, gi + 1);
    } while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  rec(rec, 0);
  return best;
}

}  // namespace

std::string canonical_code(const Graph& g) {
  if (is_nodeless_loop(g)) return "nodeless-loop";
  Best b = search(g);
  std::string out = std::to_string(g.num_vertices()) + ";";
  for (auto [x, y] : b.edges) out += "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  return out;
}

Graph canonical_form(const Graph& g) {
  if (is_nodeless_loop(g)) return nodeless_loop();
  Best b = search(g);
  const int n = g.num_vertices();
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> ends;  // ((x, y), (arc_x, arc_y))
  for (const Edge& e : g.edges()) {
    int x = g.is_dart(e.first) ? b.position[g.attach(e.first)] : n;
    int y = g.is_dart(e.second) ? b.position[g.attach(e.second)] : n;
    if (x <= y)
      ends.push_back({{x, y}, {e.first, e.second}});
    else
      ends.push_back({{y, x}, {e.second, e.first}});
  }
  std::stable_sort(ends.begin(), ends.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  GraphBuilder builder;
  for (int i = 0; i < n; ++i) builder.vertex("v" + std::to_string(i));
  int k = 0;
  auto pad = [](int i) {
    std::string s = std::to_string(i);
    return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
  };
  for (const auto& [pos, arcs] : ends) {
    std::string vx = pos.first < n ? "v" + std::to_string(pos.first) : "";
    std::string vy = pos.second < n ? "v" + std::to_string(pos.second) : "";
    builder.edge("a" + pad(k), vx, "a" + pad(k + 1), vy);
    k += 2;
  }
  return builder.build();
}

bool isomorphic(const Graph& a, const Graph& b) { return canonical_code(a) == canonical_code(b); }

}  // namespace graphcat
