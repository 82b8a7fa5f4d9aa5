#pragma once

#include <optional>
#include <vector>

#include "maxlin/dag.hpp"

namespace maxlin {

/// Structural comparison of an estimated directed graph against the truth.
///
/// SHD counts unordered pairs whose edge status differs (a reversal counts
/// one). Rates follow the usual conventions: FDR = #(est \ true) / #est
/// (0 when the estimate is empty), FPR = #(est \ true) / (d(d-1) - #true),
/// TPR = #(true & est) / #true; TPR is 1 when both graphs are empty and
/// absent when only the truth is empty. Set differences are over ordered
/// pairs, so a reversed edge is both a false discovery and a miss.
struct MetricReport {
  int shd = 0;
  double nshd = 0.0;
  double fdr = 0.0;
  double fpr = 0.0;
  std::optional<double> tpr = 1.0;
};

/// Evaluates estimate against truth on d nodes; both edge sets must be
/// simple (no self-loops, no duplicates). Throws DimensionMismatch on
/// out-of-range nodes.
MetricReport evaluate(int d, const std::vector<Edge>& truth, const std::vector<Edge>& estimate);

}  // namespace maxlin
