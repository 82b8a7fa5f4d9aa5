#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "maxlin/tropical.hpp"

namespace maxlin {

/// Point cloud in tropical affine space, rows stored first-coordinate
/// normalized.
class Sample {
 public:
  Sample() = default;
  explicit Sample(int d) : d_(d) {}

  int dim() const { return d_; }
  std::size_t size() const { return n_; }

  /// Appends a point given by any raw representative; it is normalized.
  void add(std::span<const double> raw);
  void add(const TropicalPoint& p) { add(std::span<const double>(p.coords())); }

  std::span<const double> row(std::size_t k) const {
    return {x_.data() + k * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }
  double at(std::size_t k, int i) const { return x_[k * static_cast<std::size_t>(d_) + i]; }
  TropicalPoint point(std::size_t k) const;

 private:
  int d_ = 0;
  std::size_t n_ = 0;
  std::vector<double> x_;
};

/// Set of tight-constraint labels: edge {src, dst} in a cell means the
/// facet x_dst - x_src = C(dst, src) is attained. Kept sorted in
/// ConstraintOrder.
struct Cell {
  std::vector<Edge> edges;

  void canonicalize();
  bool contains(const Edge& e) const;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Link of the origin of the central subdivision dual to a polytrope:
/// a universe of facet labels plus the maximal cells covering it.
struct Subdivision {
  int d = 0;
  std::vector<Edge> universe;
  std::vector<Cell> cells;

  /// Sorts universe and cells into the canonical order used for
  /// deduplication and serialization.
  void canonicalize();

  /// Canonical text key; equal keys means equal combinatorial type.
  std::string key() const;

  /// True when every maximal cell has exactly d-1 labels.
  bool is_triangulation() const;

  friend bool operator==(const Subdivision&, const Subdivision&) = default;
};

/// Ordinary vertex of wdp(C) together with its set of tight constraints.
struct PseudoVertex {
  TropicalPoint point;
  Cell cell;
};

/// Facet matrix of the minimum bounding polytrope P(S):
/// entry (i, j) = max_k (p_i - p_j) over the sample, zero diagonal.
/// Throws EmptySample when the sample is empty. O(d^2 n) comparisons.
TropicalMatrix min_bounding_matrix(const Sample& s);

/// True when P(S) is contained in wdp(C) within tol, i.e. the bounding
/// matrix of S is entrywise below C on C's finite entries.
bool bounding_contains(const Sample& s, const TropicalMatrix& C, double tol = kDefaultTol);

/// Tight constraints of p in wdp(C) within tol. Interior points map to the
/// empty cell. Throws PointOutside when p violates a constraint beyond tol.
Cell cell_of_point(const TropicalMatrix& C, const TropicalPoint& p, double tol = kDefaultTol);

/// Enumerates the ordinary vertices of wdp(C) by solving every oriented
/// spanning tree of tight constraints and keeping the feasible solutions.
///
/// With allow_coarse = false a matrix whose vertices carry more than d-1
/// tight constraints (equivalently, two tight trees solving to the same
/// point) raises Degenerate. With allow_coarse = true coincident solutions
/// are merged and cells may be larger than d-1.
std::vector<PseudoVertex> pseudovertices(const TropicalMatrix& C, double tol = kDefaultTol,
                                         bool allow_coarse = false);

/// Dual central subdivision (link of the origin): universe = facet-defining
/// labels, maximal cells = pseudovertex cells. Propagates Degenerate.
Subdivision dual_subdivision(const TropicalMatrix& C, double tol = kDefaultTol,
                             bool allow_coarse = false);

/// Labels (reported as edges j -> i) where C_est bounds x_i - x_j strictly
/// tighter than the starred true matrix; +inf true entries count as loose.
std::vector<Edge> spurious_facets(const TropicalMatrix& C_true, const TropicalMatrix& C_est,
                                  double tol = kDefaultTol);

namespace reference {
/// Serial counterparts of the OpenMP kernels; used by tests and the benchmark.
TropicalMatrix min_bounding_matrix(const Sample& s);
std::vector<PseudoVertex> pseudovertices(const TropicalMatrix& C, double tol = kDefaultTol,
                                         bool allow_coarse = false);
}  // namespace reference

}  // namespace maxlin
