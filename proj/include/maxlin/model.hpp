#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maxlin/polytrope.hpp"
#include "maxlin/tropical.hpp"

namespace maxlin {

/// Innovation law of the structural equations, in the min-plus domain.
///
/// Gaussian innovations are drawn directly on the log scale; Frechet
/// innovations are drawn on the original positive scale and mapped by -log.
struct InnovationSpec {
  enum class Kind { kGaussian, kFrechet };
  Kind kind = Kind::kGaussian;
  double mean = 0.0;
  double stddev = 1.0;  // gaussian
  double alpha = 1.0;   // frechet shape

  void validate() const;
};

/// Max-linear Bayesian network in min-plus form: weighted DAG, its weight
/// matrix C, the cached Kleene star, and an optional coordinate relabeling.
/// Node i is emitted at coordinate permutation[i] when present.
struct MlbnModel {
  Dag dag;
  TropicalMatrix C;
  TropicalMatrix C_star;
  std::optional<std::vector<int>> permutation;

  MlbnModel() : dag(1) {}

  static MlbnModel from_dag(Dag dag, std::optional<std::vector<int>> permutation = std::nullopt);

  int dim() const { return dag.dim(); }

  /// True edge set in emitted (permuted) coordinates.
  std::vector<Edge> observed_edges() const;
};

/// Random model: each edge j -> i (j < i) kept with probability p, weight
/// uniform on [-tau, tau]; optionally a uniform random relabeling.
MlbnModel random_model(int d, double p, double tau, bool permute, std::uint64_t seed);

/// n i.i.d. observations x = C_star * z with z drawn from the innovation
/// law, permuted when the model carries a relabeling, then normalized.
Sample generate_sample(const MlbnModel& model, std::size_t n, const InnovationSpec& innov,
                       std::uint64_t seed);

/// One point per cell of `cover`, each attaining equality for every label
/// of its cell and lying in wdp(C_star). Throws UnrealizableCell when no
/// such point exists. Points are emitted in cover order (unpermuted
/// coordinates; atom samples are a model-coordinates construction).
Sample atom_sample(const MlbnModel& model, const std::vector<Cell>& cover, std::uint64_t seed,
                   double tol = kDefaultTol);

}  // namespace maxlin
