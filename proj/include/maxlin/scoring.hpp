#pragma once

#include <optional>
#include <vector>

#include "maxlin/polytrope.hpp"
#include "maxlin/tropical.hpp"

namespace maxlin {

/// Concentration score configuration. Small scores flag an atom at the
/// maximum of the coordinate difference X_i - X_j, i.e. a candidate edge.
struct ScoreConfig {
  enum class Kind { kTopK, kQuantileToMean, kUpperQuantile };
  Kind kind = Kind::kTopK;
  int k = 30;          // top-k gap
  double r_hi = 0.95;  // upper quantile level
  double r_lo = 0.75;  // lower quantile level (upper quantile gap only)

  /// Validates the configuration against a sample of size n.
  void validate(std::size_t n) const;
};

/// Dense d x d array of nonnegative scores; the diagonal is unused.
struct ScoreMatrix {
  int d = 0;
  std::vector<double> v;

  ScoreMatrix() = default;
  explicit ScoreMatrix(int dim) : d(dim), v(static_cast<std::size_t>(dim) * dim, 0.0) {}
  double& at(int i, int j) { return v[static_cast<std::size_t>(i) * d + j]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(i) * d + j]; }
};

/// Scores every ordered pair (i, j) from the sorted observations of
/// X_i - X_j:
///   top-k gap:          (D(1) - D(k))^2, D sorted descending
///   quantile-to-mean:   (mean(D) - Q(r_hi))^2 / n
///   upper quantile gap: (Q(r_hi) - Q(r_lo))^2 / n
/// Quantiles are empirical with linear interpolation (type 7).
ScoreMatrix score_differences(const Sample& s, const ScoreConfig& cfg);

/// Output of the structure-and-weights estimator.
struct EstimationResult {
  TropicalMatrix C_hat;
  std::vector<Edge> edges;  // finite off-diagonal support of C_hat
  ScoreMatrix scores;
  bool is_acyclic = true;
  std::optional<std::vector<int>> cycle;  // one witness when cyclic
};

/// Full estimator for unknown DAG and unknown ordering: starts from the
/// minimum bounding matrix and prunes each unordered pair by score.
/// Both scores >= t drops the pair entirely; otherwise the direction with
/// the smaller score is kept (ties keep i -> j). Cycles in the surviving
/// edge set are reported, not repaired.
EstimationResult estimate_with_ordering(const Sample& s, double t, const ScoreConfig& cfg);

/// Estimator for a known DAG: the minimum bounding matrix restricted to
/// the edges of g, without taking the Kleene star of the estimate.
TropicalMatrix known_dag_estimate(const Sample& s, const Dag& g);

namespace reference {
/// Serial counterpart of the OpenMP score kernel.
ScoreMatrix score_differences(const Sample& s, const ScoreConfig& cfg);
}  // namespace reference

}  // namespace maxlin
