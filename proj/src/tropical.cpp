#include "maxlin/tropical.hpp"

#include <cmath>

#include "maxlin/parallel.hpp"

namespace maxlin {

TropicalMatrix::TropicalMatrix(int d) : d_(d) {
  if (d < 1) throw DimensionMismatch("TropicalMatrix: dimension must be positive");
  e_.assign(static_cast<std::size_t>(d) * d, kInf);
  for (int i = 0; i < d; ++i) (*this)(i, i) = 0.0;
}

void TropicalMatrix::validate() const {
  for (double v : e_) {
    if (std::isnan(v)) throw ConfigError("TropicalMatrix: NaN entry");
    if (v == -kInf) throw ConfigError("TropicalMatrix: -inf entry");
  }
}

TropicalPoint::TropicalPoint(std::vector<double> raw) : c_(std::move(raw)) {
  if (c_.empty()) throw DimensionMismatch("TropicalPoint: empty coordinate vector");
  const double base = c_[0];
  for (double& v : c_) {
    if (!std::isfinite(v)) throw InfiniteCoordinate("TropicalPoint: coordinate not finite");
    v -= base;
  }
  c_[0] = 0.0;
}

namespace {

// In-place Floyd-Warshall over (min, +). The k-loop is sequential; rows are
// independent within one k-stage, so the parallel and serial versions agree
// bit for bit.
template <bool Parallel>
TropicalMatrix kleene_star_impl(const TropicalMatrix& C) {
  C.validate();
  const int d = C.dim();
  TropicalMatrix s = C;
  for (int i = 0; i < d; ++i) s(i, i) = 0.0;
  for (int k = 0; k < d; ++k) {
#pragma omp parallel for schedule(static) if (Parallel && d >= 64)
    for (int i = 0; i < d; ++i) {
      const double cik = s(i, k);
      if (cik == kInf) continue;
      for (int j = 0; j < d; ++j) {
        const double via = cik + s(k, j);
        if (via < s(i, j)) s(i, j) = via;
      }
    }
  }
  for (int i = 0; i < d; ++i) {
    if (s(i, i) < 0.0) throw NegativeCycle("kleene_star: negative-weight directed cycle");
    s(i, i) = 0.0;
  }
  return s;
}

}  // namespace

TropicalMatrix kleene_star(const TropicalMatrix& C) { return kleene_star_impl<true>(C); }

namespace reference {
TropicalMatrix kleene_star(const TropicalMatrix& C) { return kleene_star_impl<false>(C); }
}  // namespace reference

TropicalPoint min_plus_mat_vec(const TropicalMatrix& C, std::span<const double> z) {
  const int d = C.dim();
  if (static_cast<int>(z.size()) != d)
    throw DimensionMismatch("min_plus_mat_vec: vector length mismatch");
  for (double v : z)
    if (!std::isfinite(v)) throw ConfigError("min_plus_mat_vec: vector entry not finite");
  std::vector<double> out(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    double best = kInf;
    for (int j = 0; j < d; ++j) {
      const double cij = C(i, j);
      if (cij == kInf) continue;
      const double v = cij + z[static_cast<std::size_t>(j)];
      if (v < best) best = v;
    }
    if (best == kInf) throw InfiniteCoordinate("min_plus_mat_vec: row of C is entirely +inf");
    out[static_cast<std::size_t>(i)] = best;
  }
  return TropicalPoint(std::move(out));
}

bool wdp_contains(const TropicalMatrix& C, const TropicalPoint& p, double tol) {
  const int d = C.dim();
  if (p.dim() != d) throw DimensionMismatch("wdp_contains: point dimension mismatch");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const double cij = C(i, j);
      if (cij == kInf) continue;
      if (p[i] - p[j] > cij + tol) return false;
    }
  return true;
}

TropicalMatrix restrict_to_dag(const TropicalMatrix& C, const Dag& g) {
  const int d = C.dim();
  if (g.dim() != d) throw DimensionMismatch("restrict_to_dag: dimension mismatch");
  TropicalMatrix out(d);
  for (const Edge& e : g.edges()) out(e.dst, e.src) = C(e.dst, e.src);
  return out;
}

}  // namespace maxlin
