// Command-line front end: simulation studies, real-data estimation,
// triangulation census runs, and structural metric reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxlin/errors.hpp"
#include "maxlin/harness.hpp"
#include "maxlin/parallel.hpp"
#include "maxlin/version.hpp"

using nlohmann::json;

namespace {

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw maxlin::ConfigError("cannot open config file: " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw maxlin::ConfigError(std::string("config parse error: ") + e.what());
  }
}

// --set a.b.c=VALUE; VALUE parsed as JSON when possible, else as a string.
void apply_override(json& cfg, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw maxlin::ConfigError("--set expects KEY=VALUE: " + kv);
  const std::string key = kv.substr(0, eq);
  const std::string raw = kv.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;
  }
  json* node = &cfg;
  std::size_t pos = 0;
  while (true) {
    const auto dot = key.find('.', pos);
    const std::string part = key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (part.empty()) throw maxlin::ConfigError("--set: empty key segment in " + key);
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    node = &(*node)[part];
    pos = dot + 1;
  }
}

int run(const std::string& mode, const json& raw_cfg) {
  maxlin::ExperimentConfig cfg = maxlin::ExperimentConfig::from_json(raw_cfg);
  cfg.mode = mode;
  maxlin::set_threads(cfg.threads);

  if (mode == "simulate") {
    cfg.simulate.validate();
    const maxlin::SimulationResult r = maxlin::run_simulation(cfg.simulate, cfg.seed);
    maxlin::write_simulation_files(cfg, r, cfg.out_dir);
    std::cout << maxlin::format_summary(r);
    if (r.failures > 0) std::cout << "failed repetitions: " << r.failures << '\n';
  } else if (mode == "census") {
    cfg.census.validate();
    const maxlin::TypeCensus c =
        maxlin::census(cfg.census.d, cfg.census.num_samples, cfg.seed, cfg.census.options);
    maxlin::write_census_files(cfg, c, cfg.out_dir);
    std::cout << "d=" << c.d << " accepted=" << c.accepted << " attempts=" << c.attempts
              << " types=" << c.types.size() << "\nobserved cover sizes:";
    for (int s : c.observed_cover_sizes()) std::cout << ' ' << s;
    std::cout << "\nempirical minimum sample size: " << c.empirical_minimum_sample_size() << '\n';
  } else if (mode == "estimate") {
    cfg.estimate.validate();
    const maxlin::RealDataResult r = maxlin::run_real_data(cfg.estimate);
    maxlin::write_estimate_files(cfg, r, cfg.out_dir);
    std::cout << "columns:";
    for (const std::string& c : r.columns) std::cout << ' ' << c;
    std::cout << "\ndropped rows: " << r.dropped_rows
              << "\nthreshold: " << maxlin::format_double(r.threshold_used)
              << "\nedges:";
    for (const maxlin::Edge& e : r.estimation.edges)
      std::cout << ' ' << (e.src + 1) << "->" << (e.dst + 1);
    std::cout << "\nacyclic: " << (r.estimation.is_acyclic ? "yes" : "no") << '\n';
  } else if (mode == "metrics") {
    cfg.metrics.validate();
    const maxlin::MetricReport m = maxlin::run_metrics(cfg.metrics);
    maxlin::write_metrics_files(cfg, m, cfg.out_dir);
    std::cout << "shd=" << m.shd << " nshd=" << maxlin::format_double(m.nshd)
              << " fdr=" << maxlin::format_double(m.fdr)
              << " fpr=" << maxlin::format_double(m.fpr)
              << " tpr=" << (m.tpr ? maxlin::format_double(*m.tpr) : std::string("-")) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(maxlin::kVersion) +
               " - tropical estimation of max-linear Bayesian networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool threads_set = false;
  std::vector<std::string> overrides;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "master RNG seed")->each([&](const std::string&) { seed_set = true; });
  app.add_option("--threads", threads, "OpenMP thread count (0 = default)")
      ->each([&](const std::string&) { threads_set = true; });
  app.add_option("--set", overrides, "config override KEY=VALUE (dotted keys)");

  app.add_subcommand("simulate", "run a seeded simulation study");
  app.add_subcommand("census", "sample dual triangulations and report cover numbers");
  app.add_subcommand("estimate", "estimate a network from a CSV file");
  app.add_subcommand("metrics", "compare an estimated graph against the truth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    json cfg = load_config(config_path);
    for (const std::string& kv : overrides) apply_override(cfg, kv);
    if (seed_set) cfg["seed"] = seed;
    if (threads_set) cfg["threads"] = threads;
    if (!out_dir.empty()) cfg["out"] = out_dir;
    return run(app.get_subcommands().front()->get_name(), cfg);
  } catch (const maxlin::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const maxlin::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
