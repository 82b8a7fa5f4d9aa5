#include "maxlin/metrics.hpp"

#include <algorithm>

namespace maxlin {

namespace {

std::vector<Edge> checked_sorted(int d, const std::vector<Edge>& edges, const char* who) {
  std::vector<Edge> out = edges;
  std::sort(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Edge& e = out[i];
    if (e.src < 0 || e.src >= d || e.dst < 0 || e.dst >= d)
      throw DimensionMismatch(std::string(who) + ": edge endpoint out of range");
    if (e.src == e.dst) throw ConfigError(std::string(who) + ": self-loop");
    if (i > 0 && out[i - 1] == e) throw ConfigError(std::string(who) + ": duplicate edge");
  }
  return out;
}

}  // namespace

MetricReport evaluate(int d, const std::vector<Edge>& truth, const std::vector<Edge>& estimate) {
  const std::vector<Edge> te = checked_sorted(d, truth, "evaluate(truth)");
  const std::vector<Edge> ee = checked_sorted(d, estimate, "evaluate(estimate)");
  const auto has = [](const std::vector<Edge>& v, int src, int dst) {
    return std::binary_search(v.begin(), v.end(), Edge{src, dst});
  };

  int shd = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const int st = (has(te, i, j) ? 1 : 0) | (has(te, j, i) ? 2 : 0);
      const int se = (has(ee, i, j) ? 1 : 0) | (has(ee, j, i) ? 2 : 0);
      if (st != se) ++shd;
    }

  long inter = 0;
  for (const Edge& e : ee)
    if (has(te, e.src, e.dst)) ++inter;
  const long nt = static_cast<long>(te.size());
  const long ne = static_cast<long>(ee.size());
  const long false_dis = ne - inter;
  const long negatives = static_cast<long>(d) * (d - 1) - nt;

  MetricReport r;
  r.shd = shd;
  r.nshd = (nt + ne) > 0 ? static_cast<double>(shd) / static_cast<double>(nt + ne) : 0.0;
  r.fdr = ne > 0 ? static_cast<double>(false_dis) / static_cast<double>(ne) : 0.0;
  r.fpr = negatives > 0 ? static_cast<double>(false_dis) / static_cast<double>(negatives) : 0.0;
  if (nt > 0)
    r.tpr = static_cast<double>(inter) / static_cast<double>(nt);
  else
    r.tpr = (ne == 0) ? std::optional<double>(1.0) : std::nullopt;
  return r;
}

}  // namespace maxlin
