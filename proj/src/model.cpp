#include "maxlin/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxlin/rng.hpp"

namespace maxlin {

void InnovationSpec::validate() const {
  if (kind == Kind::kGaussian) {
    if (!(stddev > 0.0) || !std::isfinite(stddev) || !std::isfinite(mean))
      throw ConfigError("InnovationSpec: gaussian requires finite mean and stddev > 0");
  } else {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw ConfigError("InnovationSpec: frechet requires shape alpha > 0");
  }
}

MlbnModel MlbnModel::from_dag(Dag dag, std::optional<std::vector<int>> permutation) {
  MlbnModel m;
  const int d = dag.dim();
  if (permutation) {
    if (static_cast<int>(permutation->size()) != d)
      throw DimensionMismatch("MlbnModel: permutation size mismatch");
    std::vector<char> seen(static_cast<std::size_t>(d), 0);
    for (int v : *permutation) {
      if (v < 0 || v >= d || seen[static_cast<std::size_t>(v)])
        throw ConfigError("MlbnModel: not a permutation");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
  m.C = TropicalMatrix(d);
  for (std::size_t i = 0; i < dag.edges().size(); ++i) {
    const Edge& e = dag.edges()[i];
    m.C(e.dst, e.src) = dag.weights()[i];
  }
  m.C_star = kleene_star(m.C);
  m.dag = std::move(dag);
  m.permutation = std::move(permutation);
  return m;
}

std::vector<Edge> MlbnModel::observed_edges() const {
  std::vector<Edge> out = dag.edges();
  if (permutation) {
    for (Edge& e : out)
      e = Edge{(*permutation)[static_cast<std::size_t>(e.src)],
               (*permutation)[static_cast<std::size_t>(e.dst)]};
    std::sort(out.begin(), out.end());
  }
  return out;
}

MlbnModel random_model(int d, double p, double tau, bool permute, std::uint64_t seed) {
  if (d < 1) throw DimensionMismatch("random_model: dimension must be positive");
  if (!(p > 0.0) || p > 1.0 || std::isnan(p))
    throw InvalidProbability("random_model: edge probability must lie in (0, 1]");
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw InvalidInterval("random_model: tau must be a finite nonnegative number");

  Rng rng = Rng::stream(seed, rng_tag::kModelEdges);
  std::vector<Edge> edges;
  std::vector<double> weights;
  for (int dst = 1; dst < d; ++dst)
    for (int src = 0; src < dst; ++src)
      if (rng.bernoulli(p)) {
        edges.push_back({src, dst});
        weights.push_back(rng.uniform(-tau, tau));
      }

  std::optional<std::vector<int>> perm;
  if (permute) {
    std::vector<int> pi(static_cast<std::size_t>(d));
    std::iota(pi.begin(), pi.end(), 0);
    Rng prng = Rng::stream(seed, rng_tag::kModelPermutation);
    for (int i = d - 1; i > 0; --i)
      std::swap(pi[static_cast<std::size_t>(i)], pi[static_cast<std::size_t>(prng.uniform_int(i + 1))]);
    perm = std::move(pi);
  }
  return MlbnModel::from_dag(Dag(d, std::move(edges), std::move(weights)), std::move(perm));
}

Sample generate_sample(const MlbnModel& model, std::size_t n, const InnovationSpec& innov,
                       std::uint64_t seed) {
  if (n < 1) throw EmptySample("generate_sample: n must be positive");
  innov.validate();
  const int d = model.dim();
  const TropicalMatrix& S = model.C_star;
  std::vector<double> rows(n * static_cast<std::size_t>(d));

  // One innovation stream per observation keeps the result independent of
  // the thread schedule.
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
    Rng rng = Rng::stream(seed, rng_tag::kSamplePoint, static_cast<std::uint64_t>(k));
    std::vector<double> z(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
      z[static_cast<std::size_t>(j)] = (innov.kind == InnovationSpec::Kind::kGaussian)
                                           ? rng.gaussian(innov.mean, innov.stddev)
                                           : rng.frechet_minplus(innov.alpha);
    double* out = rows.data() + static_cast<std::size_t>(k) * d;
    for (int i = 0; i < d; ++i) {
      double best = kInf;
      for (int j = 0; j < d; ++j) {
        const double cij = S(i, j);
        if (cij == kInf) continue;
        const double v = cij + z[static_cast<std::size_t>(j)];
        if (v < best) best = v;
      }
      const int where = model.permutation ? (*model.permutation)[static_cast<std::size_t>(i)] : i;
      out[where] = best;
    }
  }

  Sample s(d);
  for (std::size_t k = 0; k < n; ++k)
    s.add(std::span<const double>(rows.data() + k * static_cast<std::size_t>(d),
                                  static_cast<std::size_t>(d)));
  return s;
}

namespace {

// Difference system t_u - t_v <= w on the contracted components; returns
// potentials from a virtual source or nullopt on a negative cycle.
struct DiffEdge {
  int from, to;  // t_to <= t_from + w
  double w;
};

std::optional<std::vector<double>> solve_difference_system(int m, const std::vector<DiffEdge>& es) {
  std::vector<double> dist(static_cast<std::size_t>(m), 0.0);
  for (int round = 0; round < m; ++round) {
    bool changed = false;
    for (const DiffEdge& e : es) {
      const double cand = dist[static_cast<std::size_t>(e.from)] + e.w;
      if (cand < dist[static_cast<std::size_t>(e.to)]) {
        dist[static_cast<std::size_t>(e.to)] = cand;
        changed = true;
      }
    }
    if (!changed) return dist;
  }
  return std::nullopt;
}

}  // namespace

Sample atom_sample(const MlbnModel& model, const std::vector<Cell>& cover, std::uint64_t seed,
                   double tol) {
  const int d = model.dim();
  const TropicalMatrix& C = model.C_star;
  Sample out(d);

  for (std::size_t ci = 0; ci < cover.size(); ++ci) {
    const Cell& cell = cover[ci];

    // Components of the tight subgraph with in-component offsets.
    std::vector<int> comp(static_cast<std::size_t>(d), -1);
    std::vector<double> rel(static_cast<std::size_t>(d), 0.0);
    std::vector<std::vector<std::pair<int, double>>> tight_adj(static_cast<std::size_t>(d));
    for (const Edge& e : cell.edges) {
      if (e.src < 0 || e.src >= d || e.dst < 0 || e.dst >= d || e.src == e.dst)
        throw DimensionMismatch("atom_sample: cell label out of range");
      const double w = C(e.dst, e.src);
      if (w == kInf)
        throw UnrealizableCell("atom_sample: cell label has no finite constraint");
      tight_adj[static_cast<std::size_t>(e.dst)].push_back({e.src, -w});  // x_src = x_dst - w
      tight_adj[static_cast<std::size_t>(e.src)].push_back({e.dst, w});   // x_dst = x_src + w
    }
    int m = 0;
    for (int root = 0; root < d; ++root) {
      if (comp[static_cast<std::size_t>(root)] != -1) continue;
      comp[static_cast<std::size_t>(root)] = m;
      rel[static_cast<std::size_t>(root)] = 0.0;
      std::vector<int> stack{root};
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const auto& [v, w] : tight_adj[static_cast<std::size_t>(u)]) {
          const double val = rel[static_cast<std::size_t>(u)] + w;
          if (comp[static_cast<std::size_t>(v)] == -1) {
            comp[static_cast<std::size_t>(v)] = m;
            rel[static_cast<std::size_t>(v)] = val;
            stack.push_back(v);
          } else if (std::abs(rel[static_cast<std::size_t>(v)] - val) > tol) {
            throw UnrealizableCell("atom_sample: inconsistent tight cycle in cell");
          }
        }
      }
      ++m;
    }

    // Constraints between components, shrunk by eps to land in the
    // relative interior of the cell's face.
    std::vector<DiffEdge> base;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        const double cij = C(i, j);
        if (cij == kInf) continue;
        const int u = comp[static_cast<std::size_t>(i)];
        const int v = comp[static_cast<std::size_t>(j)];
        if (u == v) {
          const double slack = cij - (rel[static_cast<std::size_t>(i)] - rel[static_cast<std::size_t>(j)]);
          if (slack < -tol)
            throw UnrealizableCell("atom_sample: tight system violates another facet");
          continue;
        }
        // (t_u + rel_i) - (t_v + rel_j) <= c_ij
        base.push_back({v, u, cij - rel[static_cast<std::size_t>(i)] + rel[static_cast<std::size_t>(j)]});
      }

    std::optional<std::vector<double>> t;
    double eps_used = 0.0;
    for (double eps = 0.5; eps >= 0x1.0p-40; eps *= 0.5) {
      std::vector<DiffEdge> es = base;
      for (DiffEdge& e : es) e.w -= eps;
      t = solve_difference_system(m, es);
      if (t) {
        eps_used = eps;
        break;
      }
    }
    if (!t) t = solve_difference_system(m, base);
    if (!t) throw UnrealizableCell("atom_sample: tight system is infeasible");

    // A dyadic jitter below eps/4 keeps every strict inequality strict and,
    // on dyadic-grid inputs, keeps all differences exact.
    if (eps_used > 0.0 && m > 1) {
      Rng rng = Rng::stream(seed, rng_tag::kAtomJitter, ci);
      const double scale = eps_used * 0.25;
      for (int u = 0; u < m; ++u)
        (*t)[static_cast<std::size_t>(u)] +=
            static_cast<double>(rng.next_u64() >> 44) * 0x1.0p-20 * scale;
    }

    std::vector<double> x(static_cast<std::size_t>(d));
    for (int v = 0; v < d; ++v)
      x[static_cast<std::size_t>(v)] =
          rel[static_cast<std::size_t>(v)] + (*t)[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    TropicalPoint p(std::move(x));

    if (!wdp_contains(C, p, tol))
      throw UnrealizableCell("atom_sample: constructed point left the polytrope");
    const Cell tight = cell_of_point(C, p, tol);
    for (const Edge& e : cell.edges)
      if (!tight.contains(e))
        throw UnrealizableCell("atom_sample: cell label not attained by constructed point");

    out.add(p);
  }
  return out;
}

}  // namespace maxlin
