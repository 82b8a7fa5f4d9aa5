#include "maxlin/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "maxlin/rng.hpp"
#include "maxlin/version.hpp"

namespace maxlin {

using nlohmann::json;

namespace {

ScoreConfig score_config_from_json(const json& j) {
  ScoreConfig cfg;
  if (j.contains("kind")) {
    const std::string k = j.at("kind").get<std::string>();
    if (k == "top_k")
      cfg.kind = ScoreConfig::Kind::kTopK;
    else if (k == "quantile_to_mean")
      cfg.kind = ScoreConfig::Kind::kQuantileToMean;
    else if (k == "upper_quantile")
      cfg.kind = ScoreConfig::Kind::kUpperQuantile;
    else
      throw ConfigError("scoring.kind must be top_k, quantile_to_mean or upper_quantile");
  }
  cfg.k = j.value("k", cfg.k);
  cfg.r_hi = j.value("r_hi", cfg.r_hi);
  cfg.r_lo = j.value("r_lo", cfg.r_lo);
  return cfg;
}

json score_config_to_json(const ScoreConfig& cfg) {
  const char* kind = cfg.kind == ScoreConfig::Kind::kTopK ? "top_k"
                     : cfg.kind == ScoreConfig::Kind::kQuantileToMean ? "quantile_to_mean"
                                                                      : "upper_quantile";
  return json{{"kind", kind}, {"k", cfg.k}, {"r_hi", cfg.r_hi}, {"r_lo", cfg.r_lo}};
}

InnovationSpec innovation_from_json(const json& j) {
  InnovationSpec spec;
  if (j.contains("kind")) {
    const std::string k = j.at("kind").get<std::string>();
    if (k == "gaussian")
      spec.kind = InnovationSpec::Kind::kGaussian;
    else if (k == "frechet")
      spec.kind = InnovationSpec::Kind::kFrechet;
    else
      throw ConfigError("innovation.kind must be gaussian or frechet");
  }
  spec.mean = j.value("mean", spec.mean);
  spec.stddev = j.value("stddev", spec.stddev);
  spec.alpha = j.value("alpha", spec.alpha);
  return spec;
}

json innovation_to_json(const InnovationSpec& spec) {
  return json{{"kind", spec.kind == InnovationSpec::Kind::kGaussian ? "gaussian" : "frechet"},
              {"mean", spec.mean},
              {"stddev", spec.stddev},
              {"alpha", spec.alpha}};
}

// threshold: number, or "auto" for the labeled median calibration mode.
void threshold_from_json(const json& j, double& value, bool& is_auto) {
  if (!j.contains("threshold")) return;
  const json& t = j.at("threshold");
  if (t.is_string()) {
    if (t.get<std::string>() != "auto") throw ConfigError("threshold must be a number or \"auto\"");
    is_auto = true;
  } else {
    value = t.get<double>();
    is_auto = false;
  }
}

json threshold_to_json(double value, bool is_auto) {
  if (is_auto) return json("auto");
  return json(value);
}

double median_offdiagonal_score(const ScoreMatrix& s) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(s.d) * (s.d - 1));
  for (int i = 0; i < s.d; ++i)
    for (int j = 0; j < s.d; ++j)
      if (i != j) v.push_back(s.at(i, j));
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  return 0.5 * (v[(n - 1) / 2] + v[n / 2]);
}

}  // namespace

void SimulateConfig::validate() const {
  if (d < 1) throw ConfigError("simulate.d must be positive");
  if (!(p > 0.0) || p > 1.0) throw InvalidProbability("simulate.p must lie in (0, 1]");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidInterval("simulate.tau must be >= 0");
  if (n < 2) throw ConfigError("simulate.n must be at least 2");
  if (repetitions < 0) throw ConfigError("simulate.repetitions must be nonnegative");
  if (!threshold_auto && (!(threshold >= 0.0) || !std::isfinite(threshold)))
    throw ConfigError("simulate.threshold must be a nonnegative number");
  if (estimator != "ordering" && estimator != "known_dag")
    throw ConfigError("simulate.estimator must be ordering or known_dag");
  innovation.validate();
}

void CensusConfig::validate() const {
  if (d < 3) throw ConfigError("census.d must be at least 3");
  if (num_samples < 0) throw ConfigError("census.num_samples must be nonnegative");
  if (options.greedy_repetitions < 1) throw ConfigError("census.greedy_repetitions must be positive");
}

void EstimateConfig::validate() const {
  if (csv_path.empty()) throw ConfigError("estimate.csv is required");
  if (!threshold_auto && (!(threshold >= 0.0) || !std::isfinite(threshold)))
    throw ConfigError("estimate.threshold must be a nonnegative number");
}

void MetricsConfig::validate() const {
  if (true_graph_path.empty() || est_graph_path.empty())
    throw ConfigError("metrics.true_graph and metrics.est_graph are required");
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.mode = j.value("mode", cfg.mode);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.threads = j.value("threads", cfg.threads);
  cfg.out_dir = j.value("out", cfg.out_dir);

  if (j.contains("simulate")) {
    const json& s = j.at("simulate");
    SimulateConfig& c = cfg.simulate;
    c.d = s.value("d", c.d);
    c.p = s.value("p", c.p);
    c.tau = s.value("tau", c.tau);
    c.n = s.value("n", c.n);
    c.repetitions = s.value("repetitions", c.repetitions);
    c.permute = s.value("permute", c.permute);
    if (s.contains("innovation")) c.innovation = innovation_from_json(s.at("innovation"));
    if (s.contains("scoring")) c.scoring = score_config_from_json(s.at("scoring"));
    threshold_from_json(s, c.threshold, c.threshold_auto);
    c.estimator = s.value("estimator", c.estimator);
  }
  if (j.contains("census")) {
    const json& s = j.at("census");
    CensusConfig& c = cfg.census;
    c.d = s.value("d", c.d);
    c.num_samples = s.value("num_samples", c.num_samples);
    c.options.greedy_repetitions = s.value("greedy_repetitions", c.options.greedy_repetitions);
    c.options.exact_budget = s.value("exact_budget", c.options.exact_budget);
    c.options.tol = s.value("tol", c.options.tol);
  }
  if (j.contains("estimate")) {
    const json& s = j.at("estimate");
    EstimateConfig& c = cfg.estimate;
    c.csv_path = s.value("csv", c.csv_path);
    const std::string prep = s.value("preprocess", std::string("neg_log"));
    if (prep == "neg_log")
      c.preprocess = Preprocess::kNegLog;
    else if (prep == "none")
      c.preprocess = Preprocess::kNone;
    else
      throw ConfigError("estimate.preprocess must be neg_log or none");
    if (s.contains("columns"))
      c.columns = s.at("columns").get<std::vector<std::string>>();
    if (s.contains("scoring")) c.scoring = score_config_from_json(s.at("scoring"));
    threshold_from_json(s, c.threshold, c.threshold_auto);
  }
  if (j.contains("metrics")) {
    const json& s = j.at("metrics");
    cfg.metrics.true_graph_path = s.value("true_graph", cfg.metrics.true_graph_path);
    cfg.metrics.est_graph_path = s.value("est_graph", cfg.metrics.est_graph_path);
  }
  return cfg;
}

json ExperimentConfig::resolved() const {
  json j;
  j["mode"] = mode;
  j["seed"] = seed;
  j["threads"] = threads;
  j["out"] = out_dir;
  j["simulate"] = json{{"d", simulate.d},
                       {"p", simulate.p},
                       {"tau", simulate.tau},
                       {"n", simulate.n},
                       {"repetitions", simulate.repetitions},
                       {"permute", simulate.permute},
                       {"innovation", innovation_to_json(simulate.innovation)},
                       {"scoring", score_config_to_json(simulate.scoring)},
                       {"threshold", threshold_to_json(simulate.threshold, simulate.threshold_auto)},
                       {"estimator", simulate.estimator}};
  j["census"] = json{{"d", census.d},
                     {"num_samples", census.num_samples},
                     {"greedy_repetitions", census.options.greedy_repetitions},
                     {"exact_budget", census.options.exact_budget},
                     {"tol", census.options.tol}};
  j["estimate"] = json{{"csv", estimate.csv_path},
                       {"preprocess", estimate.preprocess == Preprocess::kNegLog ? "neg_log" : "none"},
                       {"columns", estimate.columns},
                       {"scoring", score_config_to_json(estimate.scoring)},
                       {"threshold", threshold_to_json(estimate.threshold, estimate.threshold_auto)}};
  j["metrics"] = json{{"true_graph", metrics.true_graph_path}, {"est_graph", metrics.est_graph_path}};
  return j;
}

namespace {

Dag observed_dag(const MlbnModel& model) {
  if (!model.permutation) return model.dag;
  std::vector<Edge> edges = model.dag.edges();
  for (Edge& e : edges)
    e = Edge{(*model.permutation)[static_cast<std::size_t>(e.src)],
             (*model.permutation)[static_cast<std::size_t>(e.dst)]};
  return Dag(model.dim(), std::move(edges), model.dag.weights());
}

Aggregate aggregate_of(const std::vector<double>& xs) {
  Aggregate a;
  a.count = static_cast<long>(xs.size());
  if (xs.empty()) return a;
  double sum = 0.0;
  for (double x : xs) sum += x;
  a.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - a.mean) * (x - a.mean);
    a.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return a;
}

}  // namespace

SimulationResult run_simulation(const SimulateConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  SimulationResult out;
  out.reps.resize(static_cast<std::size_t>(cfg.repetitions));

#pragma omp parallel for schedule(dynamic)
  for (long rep = 0; rep < cfg.repetitions; ++rep) {
    RepetitionOutcome& slot = out.reps[static_cast<std::size_t>(rep)];
    try {
      const std::uint64_t model_seed =
          Rng::stream(seed, rng_tag::kSimulationModel, static_cast<std::uint64_t>(rep)).next_u64();
      const std::uint64_t sample_seed =
          Rng::stream(seed, rng_tag::kSimulationSample, static_cast<std::uint64_t>(rep)).next_u64();
      const MlbnModel model = random_model(cfg.d, cfg.p, cfg.tau, cfg.permute, model_seed);
      const Sample sample = generate_sample(model, cfg.n, cfg.innovation, sample_seed);
      const std::vector<Edge> truth = model.observed_edges();

      std::vector<Edge> estimated;
      double threshold_used = cfg.threshold;
      if (cfg.estimator == "known_dag") {
        const Dag g = observed_dag(model);
        (void)known_dag_estimate(sample, g);
        estimated = g.edges();
        threshold_used = 0.0;
      } else {
        if (cfg.threshold_auto)
          threshold_used = median_offdiagonal_score(score_differences(sample, cfg.scoring));
        const EstimationResult est = estimate_with_ordering(sample, threshold_used, cfg.scoring);
        estimated = est.edges;
      }
      slot.report = evaluate(cfg.d, truth, estimated);
      slot.threshold_used = threshold_used;
    } catch (const std::exception& e) {
      slot.error = e.what();
    }
  }

  std::vector<double> shd, nshd, fdr, fpr, tpr;
  for (const RepetitionOutcome& r : out.reps) {
    if (!r.report) {
      ++out.failures;
      continue;
    }
    shd.push_back(r.report->shd);
    nshd.push_back(r.report->nshd);
    fdr.push_back(r.report->fdr);
    fpr.push_back(r.report->fpr);
    if (r.report->tpr) tpr.push_back(*r.report->tpr);
  }
  out.shd = aggregate_of(shd);
  out.nshd = aggregate_of(nshd);
  out.fdr = aggregate_of(fdr);
  out.fpr = aggregate_of(fpr);
  out.tpr = aggregate_of(tpr);
  return out;
}

RealDataResult run_real_data(const EstimateConfig& cfg) {
  cfg.validate();
  const CsvTable table = read_csv_file(cfg.csv_path);
  RealDataResult out;
  const Sample sample = sample_from_table(table, cfg.columns, cfg.preprocess, &out.dropped_rows);
  out.columns = cfg.columns.empty() ? table.columns : cfg.columns;

  out.threshold_used = cfg.threshold;
  if (cfg.threshold_auto)
    out.threshold_used = median_offdiagonal_score(score_differences(sample, cfg.scoring));
  out.estimation = estimate_with_ordering(sample, out.threshold_used, cfg.scoring);
  try {
    out.C_hat_star = kleene_star(out.estimation.C_hat);
  } catch (const NegativeCycle&) {
    out.C_hat_star = std::nullopt;  // cyclic estimate with divergent star
  }
  return out;
}

namespace {

struct GraphFile {
  int d = 0;
  std::vector<Edge> edges;
};

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  GraphFile g;
  if (!j.contains("edges")) throw ParseError("graph file: missing edges");
  for (const json& t : j.at("edges")) {
    if (!t.is_array() || t.size() < 2) throw ParseError("graph file: edge must be [src, dst, ...]");
    g.edges.push_back({t[0].get<int>() - 1, t[1].get<int>() - 1});
  }
  if (j.contains("d")) {
    g.d = j.at("d").get<int>();
  } else {
    for (const Edge& e : g.edges) g.d = std::max({g.d, e.src + 1, e.dst + 1});
  }
  return g;
}

}  // namespace

MetricReport run_metrics(const MetricsConfig& cfg) {
  cfg.validate();
  const GraphFile truth = read_graph_file(cfg.true_graph_path);
  const GraphFile est = read_graph_file(cfg.est_graph_path);
  const int d = std::max(truth.d, est.d);
  if (truth.d != 0 && est.d != 0 && truth.d != est.d)
    throw DimensionMismatch("metrics: graphs disagree on d");
  return evaluate(d, truth.edges, est.edges);
}

namespace {

std::ofstream open_out(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + (dir / name).string());
  return out;
}

void provenance(std::ostream& out, const ExperimentConfig& cfg) {
  out << "# " << kVersion << "\n# config: " << cfg.resolved().dump() << '\n';
}

std::string metric_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

void write_simulation_files(const ExperimentConfig& cfg, const SimulationResult& r,
                            const std::filesystem::path& out_dir) {
  {
    std::ofstream out = open_out(out_dir, "simulation_runs.csv");
    provenance(out, cfg);
    if (r.failures > 0) out << "# failed_repetitions: " << r.failures << '\n';
    out << "run_id,shd,nshd,fdr,fpr,tpr\n";
    for (std::size_t rep = 0; rep < r.reps.size(); ++rep) {
      const RepetitionOutcome& o = r.reps[rep];
      if (!o.report) continue;
      out << rep << ',' << o.report->shd << ',' << format_double(o.report->nshd) << ','
          << format_double(o.report->fdr) << ',' << format_double(o.report->fpr) << ','
          << metric_field(o.report->tpr) << '\n';
    }
  }
  {
    std::ofstream out = open_out(out_dir, "simulation_summary.csv");
    provenance(out, cfg);
    out << "metric,mean,sd,count\n";
    const auto row = [&](const char* name, const Aggregate& a) {
      out << name << ',' << format_double(a.mean) << ',' << format_double(a.sd) << ',' << a.count
          << '\n';
    };
    row("shd", r.shd);
    row("nshd", r.nshd);
    row("fdr", r.fdr);
    row("fpr", r.fpr);
    row("tpr", r.tpr);
  }
}

void write_census_files(const ExperimentConfig& cfg, const TypeCensus& c,
                        const std::filesystem::path& out_dir) {
  {
    std::ofstream out = open_out(out_dir, "census.csv");
    provenance(out, cfg);
    out << "# accepted: " << c.accepted << " attempts: " << c.attempts << '\n';
    out << "type_id,d,count_seen,greedy_min,exact_min\n";
    for (std::size_t t = 0; t < c.types.size(); ++t) {
      const TypeStats& s = c.types[t];
      out << t << ',' << c.d << ',' << s.count_seen << ',' << s.greedy_min << ',';
      if (s.exact_min) out << *s.exact_min;
      out << '\n';
    }
  }
  {
    std::ofstream out = open_out(out_dir, "census_types.json");
    json types = json::array();
    for (std::size_t t = 0; t < c.types.size(); ++t) {
      const TypeStats& s = c.types[t];
      json entry{{"type_id", t},
                 {"count_seen", s.count_seen},
                 {"greedy_min", s.greedy_min},
                 {"exact_min", s.exact_min ? json(*s.exact_min) : json(nullptr)},
                 {"subdivision", subdivision_to_json(s.subdivision)}};
      types.push_back(std::move(entry));
    }
    json doc{{"version", kVersion},
             {"config", cfg.resolved()},
             {"d", c.d},
             {"accepted", c.accepted},
             {"attempts", c.attempts},
             {"types", std::move(types)}};
    out << doc.dump(2) << '\n';
  }
}

void write_estimate_files(const ExperimentConfig& cfg, const RealDataResult& r,
                          const std::filesystem::path& out_dir) {
  std::ofstream out = open_out(out_dir, "estimate.json");
  json doc{{"version", kVersion},
           {"config", cfg.resolved()},
           {"columns", r.columns},
           {"dropped_rows", r.dropped_rows},
           {"threshold_used", r.threshold_used},
           {"estimation", estimation_to_json(r.estimation)},
           {"C_hat", matrix_to_json(r.estimation.C_hat)},
           {"C_hat_star", r.C_hat_star ? matrix_to_json(*r.C_hat_star) : json(nullptr)}};
  out << doc.dump(2) << '\n';
}

void write_metrics_files(const ExperimentConfig& cfg, const MetricReport& m,
                         const std::filesystem::path& out_dir) {
  std::ofstream out = open_out(out_dir, "metrics.csv");
  provenance(out, cfg);
  out << "run_id,shd,nshd,fdr,fpr,tpr\n";
  out << 0 << ',' << m.shd << ',' << format_double(m.nshd) << ',' << format_double(m.fdr) << ','
      << format_double(m.fpr) << ',' << metric_field(m.tpr) << '\n';
}

std::string format_summary(const SimulationResult& r) {
  char buf[256];
  std::string s;
  const auto pct = [&](const char* name, const Aggregate& a) {
    std::snprintf(buf, sizeof buf, "%-5s %6.1f%% (%.1f%%)\n", name, 100.0 * a.mean, 100.0 * a.sd);
    s += buf;
  };
  std::snprintf(buf, sizeof buf, "shd   %6.2f (%.2f)  over %ld repetitions\n", r.shd.mean, r.shd.sd,
                r.shd.count);
  s += buf;
  pct("nshd", r.nshd);
  pct("fdr", r.fdr);
  pct("fpr", r.fpr);
  pct("tpr", r.tpr);
  return s;
}

}  // namespace maxlin
