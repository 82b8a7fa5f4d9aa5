#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "maxlin/errors.hpp"

namespace maxlin {

/// Directed edge src -> dst between 0-based nodes.
///
/// Doubles as the label of the constraint x_dst - x_src <= C(dst, src):
/// the facet of wdp(C) that corresponds to the edge src -> dst.
struct Edge {
  int src = 0;
  int dst = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Orders edge labels by the matrix entry they bound, (dst, src). Cells
/// and universes of subdivisions are kept sorted in this order.
struct ConstraintOrder {
  bool operator()(const Edge& a, const Edge& b) const {
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.src < b.src;
  }
};

/// Returns the node sequence of some directed cycle (first node repeated
/// at the end), or nullopt if the edge set is acyclic.
std::optional<std::vector<int>> find_cycle(int d, const std::vector<Edge>& edges);

/// Weighted DAG on nodes 0..d-1. The edge src -> dst carries the min-plus
/// weight that lives at matrix entry (dst, src).
class Dag {
 public:
  explicit Dag(int d);
  Dag(int d, std::vector<Edge> edges, std::vector<double> weights);

  int dim() const { return d_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& weights() const { return weights_; }
  bool has_edge(int src, int dst) const;

  /// Complete DAG kappa_d (all edges j -> i for j < i), given weights or zeros.
  static Dag complete(int d);
  static Dag complete(int d, const std::vector<double>& lower_weights);

 private:
  int d_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> weights_;
};

}  // namespace maxlin
