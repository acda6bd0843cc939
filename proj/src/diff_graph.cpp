#include "gapcheck/diff_graph.hpp"

#include <algorithm>

#include "gapcheck/errors.hpp"
#include "gapcheck/formula.hpp"

namespace gapcheck {

DiffGraph::DiffGraph() : names_{std::string(kZeroVar)} {}

int DiffGraph::vertex(std::string_view name) {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it != names_.end()) return static_cast<int>(it - names_.begin());
  names_.emplace_back(name);
  return num_vertices() - 1;
}

void DiffGraph::add_edge(int from, int to, std::int64_t weight, int tag) {
  if (from < 0 || from >= num_vertices() || to < 0 || to >= num_vertices()) {
    throw InvariantError("DiffGraph: edge endpoint out of range");
  }
  edges_.push_back({from, to, weight, tag});
}

void DiffGraph::add_constraint(std::string_view lhs, std::string_view rhs,
                               std::int64_t bound, int tag) {
  const int x = vertex(lhs);
  const int y = vertex(rhs);
  add_edge(y, x, bound, tag);
}

CycleCheck check_negative_cycle(const DiffGraph& g) {
  const int n = g.num_vertices();
  const auto& edges = g.edges();
  std::vector<std::int64_t> dist(n, 0);
  std::vector<int> pred(n, -1);  // index into edges

  int relaxed = -1;
  for (int pass = 0; pass < n; ++pass) {
    relaxed = -1;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      const auto& e = edges[i];
      if (dist[e.from] + e.weight < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.weight;
        pred[e.to] = i;
        relaxed = e.to;
      }
    }
    if (relaxed < 0) break;
  }

  CycleCheck out;
  if (relaxed < 0) {
    const std::int64_t shift = dist[0];
    out.potentials.resize(n);
    for (int v = 0; v < n; ++v) out.potentials[v] = dist[v] - shift;
    return out;
  }

  // Still relaxing after n passes: walking predecessors n times lands on a
  // vertex of a negative cycle.
  auto step = [&](int at) -> const DiffEdge& {
    if (pred[at] < 0) throw InvariantError("DiffGraph: broken predecessor chain");
    return edges[pred[at]];
  };
  int v = relaxed;
  for (int i = 0; i < n; ++i) v = step(v).from;
  std::vector<DiffEdge> cycle;
  int u = v;
  do {
    const auto& e = step(u);
    cycle.push_back(e);
    u = e.from;
  } while (u != v);
  std::reverse(cycle.begin(), cycle.end());
  out.cycle = std::move(cycle);
  return out;
}

}  // namespace gapcheck
