#pragma once

#include <limits>
#include <span>
#include <vector>

#include "maxlin/dag.hpp"
#include "maxlin/errors.hpp"

namespace maxlin {

/// Additive identity of the min-plus semiring.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Default absolute tolerance for tightness and containment checks.
inline constexpr double kDefaultTol = 1e-9;

/// Square matrix over the min-plus semiring (entries in R union {+inf}).
///
/// Entry (i, j) bounds the coordinate difference x_i - x_j of the weighted
/// digraph polyhedron wdp(C) and is the weight of the DAG edge j -> i.
/// Entries are never NaN and never -inf.
class TropicalMatrix {
 public:
  TropicalMatrix() = default;

  /// Tropical identity of dimension d: zero diagonal, +inf elsewhere.
  explicit TropicalMatrix(int d);

  double& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * d_ + j]; }
  double operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * d_ + j]; }

  int dim() const { return d_; }

  /// Throws if any entry is NaN or -inf.
  void validate() const;

  friend bool operator==(const TropicalMatrix&, const TropicalMatrix&) = default;

 private:
  int d_ = 0;
  std::vector<double> e_;
};

/// Point of the tropical affine space, stored with coords[0] == 0.
class TropicalPoint {
 public:
  TropicalPoint() = default;

  /// Normalizes the raw representative by subtracting its first coordinate.
  explicit TropicalPoint(std::vector<double> raw);

  const std::vector<double>& coords() const { return c_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  int dim() const { return static_cast<int>(c_.size()); }

  friend bool operator==(const TropicalPoint&, const TropicalPoint&) = default;

 private:
  std::vector<double> c_;
};

/// Kleene star I + C + C^2 + ... computed as an all-pairs shortest path
/// closure. The input diagonal is ignored and the output diagonal is zero.
/// Throws NegativeCycle if some directed cycle has negative total weight.
TropicalMatrix kleene_star(const TropicalMatrix& C);

/// Min-plus product C * z followed by first-coordinate normalization.
/// Throws InfiniteCoordinate if some row of C is entirely +inf.
TropicalPoint min_plus_mat_vec(const TropicalMatrix& C, std::span<const double> z);

/// Membership test for the weighted digraph polyhedron:
/// p_i - p_j <= c_ij + tol for every finite off-diagonal entry.
bool wdp_contains(const TropicalMatrix& C, const TropicalPoint& p, double tol = kDefaultTol);

/// Keeps entry (i, j) where j -> i is an edge of g, +inf elsewhere,
/// zero diagonal.
TropicalMatrix restrict_to_dag(const TropicalMatrix& C, const Dag& g);

namespace reference {
/// Serial Floyd-Warshall closure; the OpenMP version must match it bit for bit.
TropicalMatrix kleene_star(const TropicalMatrix& C);
}  // namespace reference

}  // namespace maxlin
