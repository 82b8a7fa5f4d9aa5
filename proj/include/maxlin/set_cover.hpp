#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "maxlin/polytrope.hpp"
#include "maxlin/rng.hpp"

namespace maxlin {

inline constexpr long kDefaultExactBudget = 5'000'000;

/// A set cover of a subdivision's universe by maximal cells.
struct CoverResult {
  std::vector<Cell> cells;
  int size = 0;
  bool covered = false;
};

/// Randomized greedy cover: each run repeatedly picks the cell covering
/// the most still-uncovered labels, breaking ties uniformly at random;
/// the smallest cover over `repetitions` runs is returned.
/// Throws UncoverableElement when some label lies in no cell.
CoverResult greedy_cover(const Subdivision& sigma, int repetitions, std::uint64_t seed);

/// Exact minimum cover size by branch and bound, or nullopt when the
/// search exceeds `budget` node expansions.
std::optional<int> exact_cover(const Subdivision& sigma, long budget = kDefaultExactBudget);

/// Like exact_cover but also returns one optimal cover.
std::optional<CoverResult> exact_cover_witness(const Subdivision& sigma,
                                               long budget = kDefaultExactBudget);

/// True when `fine` refines `coarse`: same universe and every cell of
/// fine contained in some cell of coarse.
bool refine_check(const Subdivision& coarse, const Subdivision& fine);

/// Maps a cover of a refinement to a cover of the coarsening of equal or
/// smaller size by replacing each cell with a containing coarse cell.
std::vector<Cell> transfer_cover(const Subdivision& coarse, const std::vector<Cell>& fine_cover);

/// Statistics of one combinatorial type seen while sampling.
struct TypeStats {
  Subdivision subdivision;
  long count_seen = 0;
  int greedy_min = 0;
  std::optional<int> exact_min;
};

/// Census of combinatorial types of dual triangulations for generic
/// weight matrices on the complete DAG kappa_d.
struct TypeCensus {
  int d = 0;
  long requested = 0;
  long accepted = 0;
  long attempts = 0;
  std::vector<TypeStats> types;  // sorted by canonical key; index = type id

  /// Minimum cover sizes observed across types (exact when available).
  std::set<int> observed_cover_sizes() const;

  /// Empirical minimum sample size: the maximum observed cover number.
  int empirical_minimum_sample_size() const;

  /// Fraction of accepted draws whose greedy cover matched the exact oracle.
  double greedy_exact_agreement() const;
};

struct CensusOptions {
  int greedy_repetitions = 100;
  long exact_budget = kDefaultExactBudget;
  double tol = kDefaultTol;
  long max_attempts = 500'000'000;
};

/// Draws `num_samples` generic weight matrices on kappa_d (uniform weights
/// on [-1, 1], rejecting non-generic candidates), accumulates their dual
/// triangulations by combinatorial type, and runs the greedy and exact
/// cover procedures once per type. Deterministic in (d, num_samples, seed).
TypeCensus census(int d, long num_samples, std::uint64_t seed, const CensusOptions& opts = {});

/// One candidate draw for the census: fills `out` with a lower-triangular
/// matrix of uniform [-1, 1] weights and reports whether it is generic
/// (a strict Kleene star: every direct weight beats every two-step path
/// by more than tol).
bool draw_generic_complete(int d, Rng& rng, double tol, TropicalMatrix& out);

}  // namespace maxlin
