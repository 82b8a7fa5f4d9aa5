#include "maxlin/scoring.hpp"

#include <algorithm>
#include <cmath>

namespace maxlin {

void ScoreConfig::validate(std::size_t n) const {
  if (n < 2) throw TooFewObservations("scoring: need at least two observations");
  switch (kind) {
    case Kind::kTopK:
      if (k < 2) throw ConfigError("scoring: top-k requires k >= 2");
      if (static_cast<std::size_t>(k) > n)
        throw TooFewObservations("scoring: top-k requires k <= n");
      break;
    case Kind::kUpperQuantile:
      if (!(r_lo > 0.0 && r_lo < r_hi && r_hi < 1.0))
        throw ConfigError("scoring: need 0 < r_lo < r_hi < 1");
      break;
    case Kind::kQuantileToMean:
      if (!(r_hi > 0.0 && r_hi < 1.0)) throw ConfigError("scoring: need 0 < r_hi < 1");
      break;
  }
}

namespace {

// Empirical quantile with linear interpolation between order statistics
// (type 7); v must be sorted ascending.
double quantile_type7(const std::vector<double>& v, double r) {
  const std::size_t n = v.size();
  const double h = static_cast<double>(n - 1) * r;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return v[n - 1];
  const double frac = h - static_cast<double>(lo);
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

double score_one(const std::vector<double>& diffs, const ScoreConfig& cfg,
                 std::vector<double>& scratch) {
  const std::size_t n = diffs.size();
  switch (cfg.kind) {
    case ScoreConfig::Kind::kTopK: {
      scratch = diffs;
      const std::size_t kth = static_cast<std::size_t>(cfg.k) - 1;
      std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(kth),
                       scratch.end(), std::greater<double>());
      double top = scratch[0];
      for (std::size_t i = 1; i <= kth; ++i) top = std::max(top, scratch[i]);
      const double gap = top - scratch[kth];
      return gap * gap;
    }
    case ScoreConfig::Kind::kQuantileToMean: {
      scratch = diffs;
      std::sort(scratch.begin(), scratch.end());
      double mean = 0.0;
      for (double v : diffs) mean += v;
      mean /= static_cast<double>(n);
      const double gap = mean - quantile_type7(scratch, cfg.r_hi);
      return gap * gap / static_cast<double>(n);
    }
    case ScoreConfig::Kind::kUpperQuantile: {
      scratch = diffs;
      std::sort(scratch.begin(), scratch.end());
      const double gap = quantile_type7(scratch, cfg.r_hi) - quantile_type7(scratch, cfg.r_lo);
      return gap * gap / static_cast<double>(n);
    }
  }
  return 0.0;
}

template <bool Parallel>
ScoreMatrix score_differences_impl(const Sample& s, const ScoreConfig& cfg) {
  cfg.validate(s.size());
  const int d = s.dim();
  const std::size_t n = s.size();
  ScoreMatrix out(d);

#pragma omp parallel if (Parallel && d > 2)
  {
    std::vector<double> diffs(n), scratch;
#pragma omp for schedule(static) collapse(2)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        for (std::size_t k = 0; k < n; ++k) diffs[k] = s.at(k, i) - s.at(k, j);
        out.at(i, j) = score_one(diffs, cfg, scratch);
      }
  }
  return out;
}

}  // namespace

ScoreMatrix score_differences(const Sample& s, const ScoreConfig& cfg) {
  return score_differences_impl<true>(s, cfg);
}

namespace reference {
ScoreMatrix score_differences(const Sample& s, const ScoreConfig& cfg) {
  return score_differences_impl<false>(s, cfg);
}
}  // namespace reference

EstimationResult estimate_with_ordering(const Sample& s, double t, const ScoreConfig& cfg) {
  if (s.size() == 0) throw EmptySample("estimate_with_ordering: empty sample");
  if (!(t > 0.0)) {
    // t = 0 is allowed as the degenerate threshold that drops everything.
    if (t != 0.0) throw ConfigError("estimate_with_ordering: threshold must be nonnegative");
  }

  EstimationResult r;
  r.C_hat = min_bounding_matrix(s);
  r.scores = score_differences(s, cfg);
  const int d = s.dim();

  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double sij = r.scores.at(i, j);
      const double sji = r.scores.at(j, i);
      if (sij >= t && sji >= t) {
        r.C_hat(i, j) = kInf;  // neither direction present
        r.C_hat(j, i) = kInf;
      } else if (sij < sji) {
        r.C_hat(j, i) = kInf;  // j -> i present
      } else {
        r.C_hat(i, j) = kInf;  // i -> j present (ties land here)
      }
    }

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j && r.C_hat(i, j) != kInf) r.edges.push_back({j, i});
  std::sort(r.edges.begin(), r.edges.end());

  r.cycle = find_cycle(d, r.edges);
  r.is_acyclic = !r.cycle.has_value();
  return r;
}

TropicalMatrix known_dag_estimate(const Sample& s, const Dag& g) {
  if (s.size() == 0) throw EmptySample("known_dag_estimate: empty sample");
  return restrict_to_dag(min_bounding_matrix(s), g);
}

}  // namespace maxlin
