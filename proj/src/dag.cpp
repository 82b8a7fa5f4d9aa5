#include "maxlin/dag.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace maxlin {

std::optional<std::vector<int>> find_cycle(int d, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(d));
  for (const Edge& e : edges) adj[static_cast<std::size_t>(e.src)].push_back(e.dst);
  for (auto& a : adj) std::sort(a.begin(), a.end());

  // Iterative DFS with colors; on a back edge, unwind the stack for the cycle.
  std::vector<int> color(static_cast<std::size_t>(d), 0);  // 0 white, 1 gray, 2 black
  std::vector<int> parent(static_cast<std::size_t>(d), -1);
  for (int root = 0; root < d; ++root) {
    if (color[static_cast<std::size_t>(root)] != 0) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    color[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      const auto& out = adj[static_cast<std::size_t>(u)];
      if (next < out.size()) {
        const int v = out[next++];
        if (color[static_cast<std::size_t>(v)] == 0) {
          color[static_cast<std::size_t>(v)] = 1;
          parent[static_cast<std::size_t>(v)] = u;
          stack.push_back({v, 0});
        } else if (color[static_cast<std::size_t>(v)] == 1) {
          std::vector<int> cycle{v};
          for (int w = u; w != v; w = parent[static_cast<std::size_t>(w)]) cycle.push_back(w);
          cycle.push_back(v);
          std::reverse(cycle.begin() + 1, cycle.end() - 1);
          return cycle;
        }
      } else {
        color[static_cast<std::size_t>(u)] = 2;
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

Dag::Dag(int d) : d_(d) {
  if (d < 1) throw DimensionMismatch("Dag: dimension must be positive");
}

Dag::Dag(int d, std::vector<Edge> edges, std::vector<double> weights)
    : d_(d), edges_(std::move(edges)), weights_(std::move(weights)) {
  if (d < 1) throw DimensionMismatch("Dag: dimension must be positive");
  if (edges_.size() != weights_.size())
    throw DimensionMismatch("Dag: edge and weight counts differ");

  std::vector<std::size_t> order(edges_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return edges_[a] < edges_[b]; });
  std::vector<Edge> se(edges_.size());
  std::vector<double> sw(weights_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    se[i] = edges_[order[i]];
    sw[i] = weights_[order[i]];
  }
  edges_ = std::move(se);
  weights_ = std::move(sw);

  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.src < 0 || e.src >= d || e.dst < 0 || e.dst >= d)
      throw DimensionMismatch("Dag: edge endpoint out of range");
    if (e.src == e.dst) throw ConfigError("Dag: self-loop");
    if (i > 0 && edges_[i - 1] == e) throw ConfigError("Dag: duplicate edge");
    if (!std::isfinite(weights_[i])) throw InvalidInterval("Dag: edge weight must be finite");
  }
  if (find_cycle(d_, edges_)) throw ConfigError("Dag: edge set contains a directed cycle");
}

bool Dag::has_edge(int src, int dst) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{src, dst});
}

Dag Dag::complete(int d) {
  return complete(d, std::vector<double>(static_cast<std::size_t>(d) * (d - 1) / 2, 0.0));
}

Dag Dag::complete(int d, const std::vector<double>& lower_weights) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(d) * (d - 1) / 2);
  for (int src = 0; src < d; ++src)
    for (int dst = src + 1; dst < d; ++dst) edges.push_back({src, dst});
  if (lower_weights.size() != edges.size())
    throw DimensionMismatch("Dag::complete: weight count mismatch");
  return Dag(d, std::move(edges), lower_weights);
}

}  // namespace maxlin
