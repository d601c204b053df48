#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gendiv/config.hpp"
#include "gendiv/diversity.hpp"
#include "gendiv/engine.hpp"
#include "gendiv/routing.hpp"

namespace gendiv {

/// One algorithm variant: a diversity metric and its weight.
struct Variant {
  std::string name;
  MetricKind metric = MetricKind::none;
  double lambda = 0.0;
  friend bool operator==(const Variant&, const Variant&) = default;
};

/// Everything a run, grid or dump needs, resolved from a ConfigMap.
struct Settings {
  EngineConfig engine;
  RoutingProblem problem;
  std::vector<std::uint64_t> seeds;
  std::vector<Variant> variants;
  std::vector<double> grid_lambdas;  ///< empty means default_lambda_grid(metric)
  bool parallel = true;
};

/// Every key accepted in a config file or as an environment override.
std::span<const std::string_view> known_config_keys();

/// Builds settings from defaults overlaid with `config`. Throws ConfigError
/// naming the offending key.
Settings settings_from_config(const ConfigMap& config);

std::vector<Variant> default_variants();
std::vector<double> default_lambda_grid(MetricKind metric);

struct ExperimentSpec {
  std::vector<Variant> variants;
  std::vector<std::uint64_t> seeds;
  EngineConfig engine;
  RoutingProblem problem;
  std::filesystem::path output_dir;
  bool parallel = true;

  /// Throws ConfigError for duplicate or unsafe variant names, empty seeds,
  /// or an invalid engine/arena.
  void validate() const;
};

struct GridSpec {
  MetricKind metric = MetricKind::none;
  std::vector<double> lambda_values;
  std::vector<std::uint64_t> seeds;
  EngineConfig engine;
  RoutingProblem problem;
  std::filesystem::path output_dir;
  bool parallel = true;

  void validate() const;
};

/// traces[v][s] is the run of variant v with seed s.
struct ExperimentResult {
  std::vector<Variant> variants;
  std::vector<std::uint64_t> seeds;
  std::vector<std::vector<EvolutionTrace>> traces;
};

struct GridRow {
  double lambda = 0.0;
  double mean_final_fitness = 0.0;
  double std_final_fitness = 0.0;
};

struct GridReport {
  MetricKind metric = MetricKind::none;
  std::vector<GridRow> rows;
  double best_lambda = 0.0;
};

/// Runs every variant for every seed without touching the filesystem.
ExperimentResult run_variants(const ExperimentSpec& spec);

/// run_variants plus `raw_<variant>.csv` files and `aggregate.csv` in the
/// output directory. Throws IoError if the directory is not writable.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Per-lambda mean/std of final-generation mean raw fitness across seeds.
/// Best lambda is the argmax, the smaller lambda winning ties.
GridReport evaluate_grid(const GridSpec& spec);

/// evaluate_grid plus `grid_<metric>.csv` in the output directory.
GridReport grid_search(const GridSpec& spec);

/// Mean raw fitness of the last generation of each trace.
std::vector<double> final_fitness(std::span<const EvolutionTrace> traces);

// CSV writers. Reals use fixed six-decimal formatting, lines end in '\n'.
inline constexpr std::string_view kRawHeader =
    "variant,seed,generation,mean_raw_fitness,best_raw_fitness,mean_probe_diversity";
inline constexpr std::string_view kAggregateHeader =
    "variant,generation,mean_raw_fitness,std_raw_fitness";
inline constexpr std::string_view kGridHeader = "lambda,mean_final_fitness,std_final_fitness";

std::string format_real(double value);
void write_raw_csv(std::ostream& out, const Variant& variant, std::span<const std::uint64_t> seeds,
                   std::span<const EvolutionTrace> traces);
void write_aggregate_csv(std::ostream& out, const ExperimentResult& result);
void write_grid_csv(std::ostream& out, const GridReport& report);

/// Writes the genealogy log of `graph` to `path`. Throws IoError with the path.
void dump_genealogy(const GenealogyGraph& graph, const std::filesystem::path& path);

}  // namespace gendiv
