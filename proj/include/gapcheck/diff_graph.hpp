#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gapcheck {

// Edge from -> to with weight w encodes `to - from <= w`.
struct DiffEdge {
  int from = 0;
  int to = 0;
  std::int64_t weight = 0;
  // Caller-defined provenance, e.g. the solver literal that asserted it.
  int tag = 0;

  bool operator==(const DiffEdge&) const = default;
};

// Constraint graph over integer variables plus the zero vertex (id 0).
class DiffGraph {
 public:
  DiffGraph();

  // Returns the existing id for a known name. kZeroVar maps to 0.
  int vertex(std::string_view name);
  void add_edge(int from, int to, std::int64_t weight, int tag = 0);
  // Adds the edge for `lhs - rhs <= bound`.
  void add_constraint(std::string_view lhs, std::string_view rhs,
                      std::int64_t bound, int tag = 0);

  int num_vertices() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<DiffEdge>& edges() const { return edges_; }

 private:
  std::vector<std::string> names_;
  std::vector<DiffEdge> edges_;
};

struct CycleCheck {
  // Edges of a negative-weight cycle in traversal order, if one exists.
  std::optional<std::vector<DiffEdge>> cycle;
  // When consistent: integer values per vertex with potentials[0] == 0 that
  // satisfy every edge constraint.
  std::vector<std::int64_t> potentials;
};

// Bellman-Ford from a virtual source connected to every vertex.
CycleCheck check_negative_cycle(const DiffGraph& g);

}  // namespace gapcheck
