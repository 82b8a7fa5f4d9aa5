#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxlin/io.hpp"
#include "maxlin/metrics.hpp"
#include "maxlin/model.hpp"
#include "maxlin/scoring.hpp"
#include "maxlin/set_cover.hpp"

namespace maxlin {

/// Calibrated default threshold for the top-k gap at the default model
/// parameters; the paper leaves the threshold scenario-specific.
inline constexpr double kDefaultThreshold = 1e-4;

struct SimulateConfig {
  int d = 5;
  double p = 1.0;
  double tau = 1.0;
  std::size_t n = 1000;
  long repetitions = 50;
  bool permute = false;
  InnovationSpec innovation;
  ScoreConfig scoring;
  double threshold = kDefaultThreshold;
  bool threshold_auto = false;  // median-of-scores calibration; not from the paper
  std::string estimator = "ordering";  // "ordering" | "known_dag"

  void validate() const;
};

struct CensusConfig {
  int d = 4;
  long num_samples = 200;
  CensusOptions options;

  void validate() const;
};

struct EstimateConfig {
  std::string csv_path;
  Preprocess preprocess = Preprocess::kNegLog;
  std::vector<std::string> columns;  // empty = all columns
  ScoreConfig scoring;
  double threshold = kDefaultThreshold;
  bool threshold_auto = false;

  void validate() const;
};

struct MetricsConfig {
  std::string true_graph_path;
  std::string est_graph_path;

  void validate() const;
};

/// One resolved run description; every output file embeds its JSON echo.
struct ExperimentConfig {
  std::string mode;  // simulate | estimate | census | metrics
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_dir = ".";
  SimulateConfig simulate;
  CensusConfig census;
  EstimateConfig estimate;
  MetricsConfig metrics;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json resolved() const;
};

struct RepetitionOutcome {
  std::optional<MetricReport> report;
  double threshold_used = 0.0;
  std::string error;  // nonempty when the repetition failed
};

struct Aggregate {
  double mean = 0.0;
  double sd = 0.0;
  long count = 0;
};

struct SimulationResult {
  std::vector<RepetitionOutcome> reps;
  long failures = 0;
  Aggregate shd, nshd, fdr, fpr, tpr;
};

/// Runs `repetitions` independent draws of (model, sample, estimate,
/// metrics) and aggregates; repetitions run in parallel on their own RNG
/// streams, failures are recorded without aborting the batch.
SimulationResult run_simulation(const SimulateConfig& cfg, std::uint64_t seed);

struct RealDataResult {
  EstimationResult estimation;
  std::optional<TropicalMatrix> C_hat_star;  // absent if starring diverges
  std::size_t dropped_rows = 0;
  double threshold_used = 0.0;
  std::vector<std::string> columns;
};

/// CSV ingestion, optional -log preprocessing, then the full estimator;
/// also reports the Kleene star of the estimate for comparability.
RealDataResult run_real_data(const EstimateConfig& cfg);

MetricReport run_metrics(const MetricsConfig& cfg);

// Result persistence. File names are fixed; every file starts with
// '# <version>' and '# config: <json>' provenance lines and is
// byte-identical for identical (config, seed) regardless of thread count.
void write_simulation_files(const ExperimentConfig& cfg, const SimulationResult& r,
                            const std::filesystem::path& out_dir);
void write_census_files(const ExperimentConfig& cfg, const TypeCensus& c,
                        const std::filesystem::path& out_dir);
void write_estimate_files(const ExperimentConfig& cfg, const RealDataResult& r,
                          const std::filesystem::path& out_dir);
void write_metrics_files(const ExperimentConfig& cfg, const MetricReport& m,
                         const std::filesystem::path& out_dir);

/// Appendix-style display: one line per metric, "mean% (sd%)".
std::string format_summary(const SimulationResult& r);

}  // namespace maxlin
