// Benchmark comparing the OpenMP kernels against their serial references.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "maxlin/model.hpp"
#include "maxlin/parallel.hpp"
#include "maxlin/polytrope.hpp"
#include "maxlin/rng.hpp"
#include "maxlin/scoring.hpp"
#include "maxlin/set_cover.hpp"
#include "maxlin/tropical.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int runs) {
  // One warmup, then best of `runs`.
  fn();
  double best = 1e300;
  for (int r = 0; r < runs; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %9.2f ms   omp %9.2f ms   speedup %5.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 0;
  if (argc > 1) threads = std::atoi(argv[1]);
  maxlin::set_threads(threads);
  std::printf("threads: %d\n", maxlin::max_threads());

  {
    const int d = 256;
    maxlin::Rng rng(7);
    maxlin::TropicalMatrix C(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j && rng.bernoulli(0.2)) C(i, j) = rng.uniform(0.0, 1.0);
    maxlin::TropicalMatrix out;
    const double ts = time_ms([&] { out = maxlin::reference::kleene_star(C); }, 3);
    const double tp = time_ms([&] { out = maxlin::kleene_star(C); }, 3);
    report("kleene_star d=256", ts, tp);
  }

  {
    const maxlin::MlbnModel model = maxlin::random_model(48, 0.5, 1.0, false, 11);
    const maxlin::Sample s = maxlin::generate_sample(model, 20000, maxlin::InnovationSpec{}, 12);
    maxlin::TropicalMatrix out;
    const double ts = time_ms([&] { out = maxlin::reference::min_bounding_matrix(s); }, 3);
    const double tp = time_ms([&] { out = maxlin::min_bounding_matrix(s); }, 3);
    report("min_bounding d=48 n=20000", ts, tp);
  }

  {
    const maxlin::MlbnModel model = maxlin::random_model(30, 0.5, 1.0, false, 21);
    const maxlin::Sample s = maxlin::generate_sample(model, 4000, maxlin::InnovationSpec{}, 22);
    maxlin::ScoreConfig cfg;
    maxlin::ScoreMatrix out;
    const double ts = time_ms([&] { out = maxlin::reference::score_differences(s, cfg); }, 3);
    const double tp = time_ms([&] { out = maxlin::score_differences(s, cfg); }, 3);
    report("score_differences d=30", ts, tp);
  }

  {
    maxlin::Rng rng(31);
    maxlin::TropicalMatrix C;
    while (!maxlin::draw_generic_complete(7, rng, 1e-9, C)) {
    }
    std::vector<maxlin::PseudoVertex> out;
    const double ts = time_ms([&] { out = maxlin::reference::pseudovertices(C); }, 3);
    const double tp = time_ms([&] { out = maxlin::pseudovertices(C); }, 3);
    report("pseudovertices d=7", ts, tp);
  }

  {
    maxlin::CensusOptions opts;
    maxlin::TypeCensus out;
    const double tp = time_ms([&] { out = maxlin::census(5, 200, 41, opts); }, 3);
    std::printf("%-28s %38.2f ms   (parallel draws)\n", "census d=5 n=200", tp);
  }

  return 0;
}
