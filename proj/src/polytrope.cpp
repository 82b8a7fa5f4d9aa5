#include "maxlin/polytrope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace maxlin {

void Sample::add(std::span<const double> raw) {
  if (d_ == 0) d_ = static_cast<int>(raw.size());
  if (static_cast<int>(raw.size()) != d_)
    throw DimensionMismatch("Sample: point dimension mismatch");
  const double base = raw[0];
  for (double v : raw) {
    if (!std::isfinite(v)) throw InfiniteCoordinate("Sample: coordinate not finite");
    x_.push_back(v - base);
  }
  x_[x_.size() - static_cast<std::size_t>(d_)] = 0.0;
  ++n_;
}

TropicalPoint Sample::point(std::size_t k) const {
  auto r = row(k);
  return TropicalPoint(std::vector<double>(r.begin(), r.end()));
}

void Cell::canonicalize() {
  std::sort(edges.begin(), edges.end(), ConstraintOrder{});
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

bool Cell::contains(const Edge& e) const {
  return std::binary_search(edges.begin(), edges.end(), e, ConstraintOrder{});
}

namespace {

bool cell_less(const Cell& a, const Cell& b) {
  return std::lexicographical_compare(a.edges.begin(), a.edges.end(), b.edges.begin(),
                                      b.edges.end(), ConstraintOrder{});
}

}  // namespace

void Subdivision::canonicalize() {
  std::sort(universe.begin(), universe.end(), ConstraintOrder{});
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  for (Cell& c : cells) c.canonicalize();
  std::sort(cells.begin(), cells.end(), cell_less);
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
}

std::string Subdivision::key() const {
  std::ostringstream os;
  os << d << ';';
  for (const Edge& e : universe) os << e.dst << ',' << e.src << ' ';
  os << ';';
  for (const Cell& c : cells) {
    for (const Edge& e : c.edges) os << e.dst << ',' << e.src << ' ';
    os << '|';
  }
  return os.str();
}

bool Subdivision::is_triangulation() const {
  for (const Cell& c : cells)
    if (static_cast<int>(c.edges.size()) != d - 1) return false;
  return true;
}

namespace {

template <bool Parallel>
TropicalMatrix min_bounding_impl(const Sample& s) {
  if (s.size() == 0) throw EmptySample("min_bounding_matrix: empty sample");
  const int d = s.dim();
  const std::size_t n = s.size();
  TropicalMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) out(i, j) = -kInf;

  // Rows of the output are independent; the max over k keeps a fixed order
  // per entry, so every schedule produces the same bits.
#pragma omp parallel for schedule(static) if (Parallel)
  for (int i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto row = s.row(k);
      const double xi = row[static_cast<std::size_t>(i)];
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        const double diff = xi - row[static_cast<std::size_t>(j)];
        if (diff > out(i, j)) out(i, j) = diff;
      }
    }
  }
  return out;
}

}  // namespace

TropicalMatrix min_bounding_matrix(const Sample& s) { return min_bounding_impl<true>(s); }

namespace reference {
TropicalMatrix min_bounding_matrix(const Sample& s) { return min_bounding_impl<false>(s); }
}  // namespace reference

bool bounding_contains(const Sample& s, const TropicalMatrix& C, double tol) {
  if (s.size() == 0) return true;
  if (s.dim() != C.dim()) throw DimensionMismatch("bounding_contains: dimension mismatch");
  const TropicalMatrix b = min_bounding_matrix(s);
  const int d = C.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const double cij = C(i, j);
      if (cij == kInf) continue;
      if (b(i, j) > cij + tol) return false;
    }
  return true;
}

Cell cell_of_point(const TropicalMatrix& C, const TropicalPoint& p, double tol) {
  const int d = C.dim();
  if (p.dim() != d) throw DimensionMismatch("cell_of_point: point dimension mismatch");
  Cell cell;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const double cij = C(i, j);
      if (cij == kInf) continue;
      const double slack = cij - (p[i] - p[j]);
      if (slack < -tol) throw PointOutside("cell_of_point: point violates a facet inequality");
      if (slack <= tol) cell.edges.push_back({j, i});
    }
  cell.canonicalize();
  return cell;
}

namespace {

// Decodes a Pruefer sequence over 0..d-1 into the d-1 edges of the labeled
// tree, each as a pair (a, b) with a < b.
void prufer_decode(int d, const std::vector<int>& seq, std::vector<std::pair<int, int>>& edges) {
  edges.clear();
  std::vector<int> degree(static_cast<std::size_t>(d), 1);
  for (int v : seq) ++degree[static_cast<std::size_t>(v)];
  int ptr = 0;
  while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
  int leaf = ptr;
  for (int v : seq) {
    edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
    if (--degree[static_cast<std::size_t>(v)] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (degree[static_cast<std::size_t>(ptr)] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(std::min(leaf, d - 1), std::max(leaf, d - 1));
}

struct Candidate {
  std::vector<double> x;  // normalized, x[0] == 0
  Cell cell;              // full tight set at x
};

// Enumerates orientations of one spanning tree, solves each tight system,
// and appends the feasible solutions with their full tight sets.
class TreeSolver {
 public:
  TreeSolver(const TropicalMatrix& C, double tol) : C_(C), d_(C.dim()), tol_(tol) {
    adj_.resize(static_cast<std::size_t>(d_));
    x_.resize(static_cast<std::size_t>(d_));
    oriented_.resize(static_cast<std::size_t>(d_ - 1));
  }

  void run(const std::vector<std::pair<int, int>>& tree, std::vector<Candidate>& out) {
    tree_ = &tree;
    for (auto& a : adj_) a.clear();
    for (std::size_t t = 0; t < tree.size(); ++t) {
      adj_[static_cast<std::size_t>(tree[t].first)].push_back(static_cast<int>(t));
      adj_[static_cast<std::size_t>(tree[t].second)].push_back(static_cast<int>(t));
    }
    choose(0, out);
  }

 private:
  void choose(std::size_t t, std::vector<Candidate>& out) {
    if (t == tree_->size()) {
      solve(out);
      return;
    }
    const auto [a, b] = (*tree_)[t];
    if (C_(a, b) != kInf) {  // tight x_a - x_b = c_ab, label (b -> a)
      oriented_[t] = Edge{b, a};
      choose(t + 1, out);
    }
    if (C_(b, a) != kInf) {  // tight x_b - x_a = c_ba, label (a -> b)
      oriented_[t] = Edge{a, b};
      choose(t + 1, out);
    }
  }

  void solve(std::vector<Candidate>& out) {
    // Propagate from node 0 along the tree; x[0] = 0 keeps the result
    // normalized with no extra rounding.
    std::vector<char> seen(static_cast<std::size_t>(d_), 0);
    std::vector<int> stack{0};
    x_[0] = 0.0;
    seen[0] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int t : adj_[static_cast<std::size_t>(u)]) {
        const auto [a, b] = (*tree_)[static_cast<std::size_t>(t)];
        const int v = (a == u) ? b : a;
        if (seen[static_cast<std::size_t>(v)]) continue;
        const Edge lab = oriented_[static_cast<std::size_t>(t)];
        const double w = C_(lab.dst, lab.src);
        x_[static_cast<std::size_t>(v)] =
            (v == lab.dst) ? x_[static_cast<std::size_t>(u)] + w
                           : x_[static_cast<std::size_t>(u)] - w;
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
    }

    Candidate cand;
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) {
        if (i == j) continue;
        const double cij = C_(i, j);
        if (cij == kInf) continue;
        const double slack = cij - (x_[static_cast<std::size_t>(i)] - x_[static_cast<std::size_t>(j)]);
        if (slack < -tol_) return;  // infeasible
        if (slack <= tol_) cand.cell.edges.push_back({j, i});
      }
    cand.x = x_;
    cand.cell.canonicalize();
    out.push_back(std::move(cand));
  }

  const TropicalMatrix& C_;
  const int d_;
  const double tol_;
  const std::vector<std::pair<int, int>>* tree_ = nullptr;
  std::vector<std::vector<int>> adj_;
  std::vector<double> x_;
  std::vector<Edge> oriented_;
};

std::uint64_t int_pow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

template <bool Parallel>
std::vector<PseudoVertex> pseudovertices_impl(const TropicalMatrix& C, double tol,
                                              bool allow_coarse) {
  C.validate();
  const int d = C.dim();
  if (d == 1) return {PseudoVertex{TropicalPoint(std::vector<double>{0.0}), Cell{}}};
  if (d > 12) throw ConfigError("pseudovertices: dimension too large for tree enumeration");

  const std::uint64_t total = (d == 2) ? 1 : int_pow(static_cast<std::uint64_t>(d), d - 2);

  std::vector<Candidate> candidates;
  const std::uint64_t chunk = 4096;
  const std::uint64_t num_chunks = (total + chunk - 1) / chunk;
  std::vector<std::vector<Candidate>> per_chunk(num_chunks);

#pragma omp parallel if (Parallel && num_chunks > 1)
  {
    TreeSolver solver(C, tol);
    std::vector<int> seq(static_cast<std::size_t>(std::max(0, d - 2)));
    std::vector<std::pair<int, int>> tree;
#pragma omp for schedule(dynamic)
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(num_chunks); ++ci) {
      auto& bucket = per_chunk[static_cast<std::size_t>(ci)];
      const std::uint64_t lo = static_cast<std::uint64_t>(ci) * chunk;
      const std::uint64_t hi = std::min(total, lo + chunk);
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        std::uint64_t rem = idx;
        for (int t = 0; t < d - 2; ++t) {
          seq[static_cast<std::size_t>(t)] = static_cast<int>(rem % static_cast<std::uint64_t>(d));
          rem /= static_cast<std::uint64_t>(d);
        }
        prufer_decode(d, seq, tree);
        solver.run(tree, bucket);
      }
    }
  }
  for (auto& bucket : per_chunk)
    candidates.insert(candidates.end(), std::make_move_iterator(bucket.begin()),
                      std::make_move_iterator(bucket.end()));

  // Cluster coincident solutions; the sorted order makes the result
  // independent of the enumeration schedule.
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
  });

  std::vector<PseudoVertex> out;
  std::size_t i = 0;
  while (i < candidates.size()) {
    std::size_t j = i + 1;
    auto same_point = [&](const Candidate& a, const Candidate& b) {
      for (int c = 0; c < d; ++c)
        if (std::abs(a.x[static_cast<std::size_t>(c)] - b.x[static_cast<std::size_t>(c)]) > tol)
          return false;
      return true;
    };
    while (j < candidates.size() && same_point(candidates[i], candidates[j])) ++j;

    Cell merged = candidates[i].cell;
    for (std::size_t k = i + 1; k < j; ++k)
      merged.edges.insert(merged.edges.end(), candidates[k].cell.edges.begin(),
                          candidates[k].cell.edges.end());
    merged.canonicalize();

    if (!allow_coarse &&
        (j - i > 1 || static_cast<int>(merged.edges.size()) > d - 1))
      throw Degenerate("pseudovertices: coincident tight trees (matrix not generic)");

    out.push_back(PseudoVertex{TropicalPoint(std::move(candidates[i].x)), std::move(merged)});
    i = j;
  }
  return out;
}

}  // namespace

std::vector<PseudoVertex> pseudovertices(const TropicalMatrix& C, double tol, bool allow_coarse) {
  return pseudovertices_impl<true>(C, tol, allow_coarse);
}

namespace reference {
std::vector<PseudoVertex> pseudovertices(const TropicalMatrix& C, double tol, bool allow_coarse) {
  return pseudovertices_impl<false>(C, tol, allow_coarse);
}
}  // namespace reference

Subdivision dual_subdivision(const TropicalMatrix& C, double tol, bool allow_coarse) {
  const auto verts = pseudovertices(C, tol, allow_coarse);
  Subdivision s;
  s.d = C.dim();
  for (const auto& v : verts) {
    s.cells.push_back(v.cell);
    s.universe.insert(s.universe.end(), v.cell.edges.begin(), v.cell.edges.end());
  }
  s.canonicalize();
  return s;
}

std::vector<Edge> spurious_facets(const TropicalMatrix& C_true, const TropicalMatrix& C_est,
                                  double tol) {
  const int d = C_true.dim();
  if (C_est.dim() != d) throw DimensionMismatch("spurious_facets: dimension mismatch");
  const TropicalMatrix star = kleene_star(C_true);
  std::vector<Edge> out;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      const double est = C_est(i, j);
      if (est == kInf) continue;
      if (est < star(i, j) - tol) out.push_back({j, i});
    }
  std::sort(out.begin(), out.end(), ConstraintOrder{});
  return out;
}

}  // namespace maxlin
