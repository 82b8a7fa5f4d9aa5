#include "maxlin/set_cover.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

namespace maxlin {

namespace {

std::uint64_t full_mask(std::size_t bits) {
  return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
}

// Universe labels indexed in canonical order; cells as bitmasks.
struct MaskedSubdivision {
  std::vector<Edge> universe;
  std::vector<std::uint64_t> masks;
  std::uint64_t full = 0;

  explicit MaskedSubdivision(const Subdivision& sigma) {
    Subdivision s = sigma;
    s.canonicalize();
    universe = s.universe;
    if (universe.empty()) throw UncoverableElement("set cover: empty universe");
    if (universe.size() > 64) throw ConfigError("set cover: universe larger than 64 labels");
    full = full_mask(universe.size());
    masks.reserve(s.cells.size());
    std::uint64_t seen = 0;
    for (const Cell& c : s.cells) {
      std::uint64_t m = 0;
      for (const Edge& e : c.edges) {
        const auto it = std::lower_bound(universe.begin(), universe.end(), e, ConstraintOrder{});
        if (it == universe.end() || !(*it == e))
          throw ConfigError("set cover: cell label outside the universe");
        m |= 1ULL << (it - universe.begin());
      }
      masks.push_back(m);
      seen |= m;
    }
    if (seen != full)
      throw UncoverableElement("set cover: some universe label lies in no cell");
  }
};

}  // namespace

CoverResult greedy_cover(const Subdivision& sigma, int repetitions, std::uint64_t seed) {
  if (repetitions < 1) throw ConfigError("greedy_cover: repetitions must be positive");
  MaskedSubdivision ms(sigma);
  Subdivision canon = sigma;
  canon.canonicalize();

  std::vector<int> best;
  std::vector<int> ties;
  for (int rep = 0; rep < repetitions; ++rep) {
    Rng rng = Rng::stream(seed, rng_tag::kGreedyCover, static_cast<std::uint64_t>(rep));
    std::uint64_t uncovered = ms.full;
    std::vector<int> chosen;
    while (uncovered != 0) {
      int best_gain = 0;
      ties.clear();
      for (std::size_t c = 0; c < ms.masks.size(); ++c) {
        const int gain = std::popcount(ms.masks[c] & uncovered);
        if (gain > best_gain) {
          best_gain = gain;
          ties.clear();
          ties.push_back(static_cast<int>(c));
        } else if (gain == best_gain && gain > 0) {
          ties.push_back(static_cast<int>(c));
        }
      }
      const int pick = ties[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(ties.size())))];
      chosen.push_back(pick);
      uncovered &= ~ms.masks[static_cast<std::size_t>(pick)];
    }
    if (best.empty() || chosen.size() < best.size()) best = std::move(chosen);
  }

  CoverResult r;
  for (int c : best) r.cells.push_back(canon.cells[static_cast<std::size_t>(c)]);
  r.size = static_cast<int>(r.cells.size());
  r.covered = true;
  return r;
}

namespace {

struct BranchAndBound {
  const MaskedSubdivision& ms;
  long budget;
  long expanded = 0;
  bool out_of_budget = false;
  int best_size;
  std::vector<int> best_set;
  std::vector<int> current;
  int max_cell_bits = 1;
  // covering cells per universe element, precomputed
  std::vector<std::vector<int>> coverers;

  BranchAndBound(const MaskedSubdivision& m, long b, int upper, std::vector<int> upper_set)
      : ms(m), budget(b), best_size(upper), best_set(std::move(upper_set)) {
    coverers.resize(ms.universe.size());
    for (std::size_t c = 0; c < ms.masks.size(); ++c) {
      max_cell_bits = std::max(max_cell_bits, std::popcount(ms.masks[c]));
      for (std::size_t e = 0; e < ms.universe.size(); ++e)
        if (ms.masks[c] & (1ULL << e)) coverers[e].push_back(static_cast<int>(c));
    }
  }

  void search(std::uint64_t uncovered) {
    if (out_of_budget) return;
    if (uncovered == 0) {
      if (static_cast<int>(current.size()) < best_size) {
        best_size = static_cast<int>(current.size());
        best_set = current;
      }
      return;
    }
    if (++expanded > budget) {
      out_of_budget = true;
      return;
    }
    const int lb = (std::popcount(uncovered) + max_cell_bits - 1) / max_cell_bits;
    if (static_cast<int>(current.size()) + lb >= best_size) return;

    // Branch on the uncovered element with the fewest covering cells.
    std::size_t pick = 0;
    std::size_t fewest = SIZE_MAX;
    for (std::size_t e = 0; e < ms.universe.size(); ++e) {
      if (!(uncovered & (1ULL << e))) continue;
      if (coverers[e].size() < fewest) {
        fewest = coverers[e].size();
        pick = e;
      }
    }
    std::vector<int> options = coverers[pick];
    std::sort(options.begin(), options.end(), [&](int a, int b) {
      const int ga = std::popcount(ms.masks[static_cast<std::size_t>(a)] & uncovered);
      const int gb = std::popcount(ms.masks[static_cast<std::size_t>(b)] & uncovered);
      if (ga != gb) return ga > gb;
      return a < b;
    });
    for (int c : options) {
      current.push_back(c);
      search(uncovered & ~ms.masks[static_cast<std::size_t>(c)]);
      current.pop_back();
      if (out_of_budget) return;
    }
  }
};

std::optional<CoverResult> exact_cover_impl(const Subdivision& sigma, long budget) {
  MaskedSubdivision ms(sigma);
  Subdivision canon = sigma;
  canon.canonicalize();

  // Deterministic greedy incumbent to seed the bound.
  CoverResult greedy = greedy_cover(sigma, 4, 0);
  std::vector<int> greedy_idx;
  for (const Cell& c : greedy.cells) {
    const auto it = std::find(canon.cells.begin(), canon.cells.end(), c);
    greedy_idx.push_back(static_cast<int>(it - canon.cells.begin()));
  }

  BranchAndBound bb(ms, budget, greedy.size, greedy_idx);
  bb.search(ms.full);
  if (bb.out_of_budget) return std::nullopt;

  CoverResult r;
  for (int c : bb.best_set) r.cells.push_back(canon.cells[static_cast<std::size_t>(c)]);
  r.size = bb.best_size;
  r.covered = true;
  return r;
}

}  // namespace

std::optional<int> exact_cover(const Subdivision& sigma, long budget) {
  const auto w = exact_cover_impl(sigma, budget);
  if (!w) return std::nullopt;
  return w->size;
}

std::optional<CoverResult> exact_cover_witness(const Subdivision& sigma, long budget) {
  return exact_cover_impl(sigma, budget);
}

namespace {

bool cell_subset(const Cell& inner, const Cell& outer) {
  return std::includes(outer.edges.begin(), outer.edges.end(), inner.edges.begin(),
                       inner.edges.end(), ConstraintOrder{});
}

}  // namespace

bool refine_check(const Subdivision& coarse, const Subdivision& fine) {
  Subdivision a = coarse, b = fine;
  a.canonicalize();
  b.canonicalize();
  if (a.universe != b.universe) return false;
  for (const Cell& cf : b.cells) {
    bool inside = false;
    for (const Cell& cc : a.cells)
      if (cell_subset(cf, cc)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

std::vector<Cell> transfer_cover(const Subdivision& coarse, const std::vector<Cell>& fine_cover) {
  Subdivision a = coarse;
  a.canonicalize();
  std::vector<Cell> out;
  for (Cell cf : fine_cover) {
    cf.canonicalize();
    const Cell* host = nullptr;
    for (const Cell& cc : a.cells)
      if (cell_subset(cf, cc)) {
        host = &cc;
        break;
      }
    if (!host) throw ConfigError("transfer_cover: cell not contained in any coarse cell");
    if (std::find(out.begin(), out.end(), *host) == out.end()) out.push_back(*host);
  }
  return out;
}

bool draw_generic_complete(int d, Rng& rng, double tol, TropicalMatrix& out) {
  out = TropicalMatrix(d);
  for (int dst = 1; dst < d; ++dst)
    for (int src = 0; src < dst; ++src) out(dst, src) = rng.uniform(-1.0, 1.0);
  // Strict Kleene star: every direct weight beats every two-step path.
  for (int i = 2; i < d; ++i)
    for (int j = 0; j < i - 1; ++j)
      for (int k = j + 1; k < i; ++k)
        if (out(i, k) + out(k, j) - out(i, j) <= tol) return false;
  return true;
}

std::set<int> TypeCensus::observed_cover_sizes() const {
  std::set<int> sizes;
  for (const TypeStats& t : types) sizes.insert(t.exact_min.value_or(t.greedy_min));
  return sizes;
}

int TypeCensus::empirical_minimum_sample_size() const {
  int m = 0;
  for (int s : observed_cover_sizes()) m = std::max(m, s);
  return m;
}

double TypeCensus::greedy_exact_agreement() const {
  long matched = 0;
  for (const TypeStats& t : types)
    if (t.exact_min && *t.exact_min == t.greedy_min) matched += t.count_seen;
  return accepted > 0 ? static_cast<double>(matched) / static_cast<double>(accepted) : 1.0;
}

TypeCensus census(int d, long num_samples, std::uint64_t seed, const CensusOptions& opts) {
  if (d < 3) throw ConfigError("census: requires d >= 3");
  if (num_samples < 0) throw ConfigError("census: negative sample count");

  TypeCensus result;
  result.d = d;
  result.requested = num_samples;

  const std::size_t expected_universe = static_cast<std::size_t>(d) * (d - 1) / 2;
  std::map<std::string, std::pair<Subdivision, long>> seen;

  const long block = 512;
  long attempt_base = 0;
  // Attempts are evaluated in parallel but committed in attempt order, so
  // the accepted set only depends on (d, num_samples, seed).
  while (result.accepted < num_samples) {
    if (attempt_base >= opts.max_attempts)
      throw ConfigError("census: attempt limit exhausted before enough generic draws");
    std::vector<std::optional<Subdivision>> drawn(static_cast<std::size_t>(block));
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < block; ++t) {
      Rng rng = Rng::stream(seed, rng_tag::kCensusDraw,
                            static_cast<std::uint64_t>(attempt_base + t));
      TropicalMatrix C;
      if (!draw_generic_complete(d, rng, opts.tol, C)) continue;
      try {
        Subdivision s = dual_subdivision(C, opts.tol);
        if (s.universe.size() != expected_universe || !s.is_triangulation()) continue;
        drawn[static_cast<std::size_t>(t)] = std::move(s);
      } catch (const Degenerate&) {
      }
    }
    for (long t = 0; t < block && result.accepted < num_samples; ++t) {
      ++result.attempts;
      auto& s = drawn[static_cast<std::size_t>(t)];
      if (!s) continue;
      ++result.accepted;
      auto [it, fresh] = seen.try_emplace(s->key(), std::move(*s), 0L);
      ++it->second.second;
    }
    attempt_base += block;
  }

  std::uint64_t rank = 0;
  for (auto& [key, entry] : seen) {
    TypeStats stats;
    stats.subdivision = std::move(entry.first);
    stats.count_seen = entry.second;
    const std::uint64_t cover_seed = Rng::stream(seed, rng_tag::kGreedyCover, rank).next_u64();
    stats.greedy_min =
        greedy_cover(stats.subdivision, opts.greedy_repetitions, cover_seed).size;
    stats.exact_min = exact_cover(stats.subdivision, opts.exact_budget);
    result.types.push_back(std::move(stats));
    ++rank;
  }
  return result;
}

}  // namespace maxlin
