#include "gendiv/experiment.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "gendiv/errors.hpp"
#include "gendiv/kernels.hpp"
#include "gendiv/stats.hpp"

namespace gendiv {
namespace {

constexpr std::array<std::string_view, 21> kKnownKeys = {
    "seed",
    "runs",
    "population_size",
    "generations",
    "mutation.prob",
    "mutation.sigma",
    "crossover.prob",
    "tournament_size",
    "immigrants",
    "tau",
    "diversity.metric",
    "diversity.lambda",
    "diversity.sample_size",
    "arena.bounds",
    "arena.start",
    "arena.goal",
    "arena.obstacle",
    "arena.step_norm",
    "variants",
    "grid.lambdas",
    "parallel",
};

Rect parse_rect(std::string_view key, std::string_view text) {
  const auto v = parse_real_list(key, text);
  if (v.size() != 4) throw ConfigError(std::string(key), "expected x_min,y_min,x_max,y_max");
  return {v[0], v[1], v[2], v[3]};
}

Vec2 parse_point(std::string_view key, std::string_view text) {
  const auto v = parse_real_list(key, text);
  if (v.size() != 2) throw ConfigError(std::string(key), "expected x,y");
  return {v[0], v[1]};
}

bool safe_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-';
  });
}

std::vector<Variant> parse_variants(std::string_view text) {
  std::vector<Variant> variants;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 3) throw ConfigError("variants", "expected name:metric:lambda, got '" + item + "'");
    Variant v;
    v.name = parts[0];
    try {
      v.metric = parse_metric_kind(parts[1]);
    } catch (const InvalidParameter& e) {
      throw ConfigError("variants", e.what());
    }
    v.lambda = parse_real("variants", parts[2]);
    variants.push_back(std::move(v));
  }
  return variants;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<EvolutionTrace> run_jobs(std::span<const RunJob> jobs, bool use_parallel) {
  return use_parallel ? parallel::run_batch(jobs) : serial::run_batch(jobs);
}

}  // namespace

std::span<const std::string_view> known_config_keys() { return kKnownKeys; }

// Lambdas are the grid-search winners over seeds 1-10 with the default grids.
std::vector<Variant> default_variants() {
  return {
      {"baseline", MetricKind::none, 0.0},
      {"domain", MetricKind::domain, 0.01},
      {"genealogical", MetricKind::genealogical_tree, 4.0},
      {"trash", MetricKind::trash_bits, 4.0},
  };
}

std::vector<double> default_lambda_grid(MetricKind metric) {
  if (metric == MetricKind::domain) return {0.01, 0.05, 0.1, 0.5, 1.0};
  return {0.1, 0.25, 0.5, 1.0, 2.0, 4.0};
}

Settings settings_from_config(const ConfigMap& config) {
  config.reject_unknown(kKnownKeys);
  Settings s;
  s.variants = default_variants();
  EngineConfig& e = s.engine;
  auto get = [&](std::string_view key) { return config.get(key); };

  std::uint64_t base_seed = 1;
  std::uint64_t runs = 10;
  if (auto v = get("seed")) base_seed = parse_unsigned("seed", *v);
  if (auto v = get("runs")) runs = parse_unsigned("runs", *v);
  if (runs == 0) throw ConfigError("runs", "must be >= 1");
  for (std::uint64_t i = 0; i < runs; ++i) s.seeds.push_back(base_seed + i);
  e.rng_seed = base_seed;

  if (auto v = get("population_size")) e.population_size = parse_unsigned("population_size", *v);
  if (auto v = get("generations")) e.generations = parse_unsigned("generations", *v);
  if (auto v = get("mutation.prob")) e.mutation_prob = parse_real("mutation.prob", *v);
  if (auto v = get("crossover.prob")) e.crossover_prob = parse_real("crossover.prob", *v);
  if (auto v = get("tournament_size")) e.tournament_size = parse_unsigned("tournament_size", *v);
  if (auto v = get("immigrants")) e.immigrants_per_gen = parse_unsigned("immigrants", *v);
  if (auto v = get("tau")) e.tau = parse_unsigned("tau", *v);
  if (auto v = get("diversity.metric")) {
    try {
      e.diversity.metric = parse_metric_kind(*v);
    } catch (const InvalidParameter& ex) {
      throw ConfigError("diversity.metric", ex.what());
    }
  }
  if (auto v = get("diversity.lambda")) e.diversity.lambda = parse_real("diversity.lambda", *v);
  if (auto v = get("diversity.sample_size")) {
    e.diversity.sample_size = parse_unsigned("diversity.sample_size", *v);
  }
  if (auto v = get("mutation.sigma")) s.problem.mutation_sigma = parse_real("mutation.sigma", *v);
  if (!(s.problem.mutation_sigma > 0.0)) throw ConfigError("mutation.sigma", "must be > 0");

  Arena& arena = s.problem.arena;
  if (auto v = get("arena.bounds")) arena.bounds = parse_rect("arena.bounds", *v);
  if (auto v = get("arena.start")) arena.start = parse_point("arena.start", *v);
  if (auto v = get("arena.goal")) arena.goal = parse_rect("arena.goal", *v);
  if (auto v = get("arena.obstacle")) arena.obstacle = parse_rect("arena.obstacle", *v);
  if (auto v = get("arena.step_norm")) {
    if (*v == "l1") {
      arena.step_norm = StepNorm::l1;
    } else if (*v == "linf") {
      arena.step_norm = StepNorm::linf;
    } else {
      throw ConfigError("arena.step_norm", "expected l1 or linf, got '" + *v + "'");
    }
  }
  try {
    arena.validate();
  } catch (const InvalidParameter& ex) {
    const std::string what = ex.what();
    const auto colon = what.find(": ");
    throw ConfigError(what.substr(0, colon), what.substr(colon + 2));
  }
  auto require = [](bool ok, const char* key, const char* what) {
    if (!ok) throw ConfigError(key, what);
  };
  require(e.mutation_prob >= 0.0 && e.mutation_prob <= 1.0, "mutation.prob", "must be in [0, 1]");
  require(e.crossover_prob >= 0.0 && e.crossover_prob <= 1.0, "crossover.prob", "must be in [0, 1]");
  require(e.population_size >= 1, "population_size", "must be >= 1");
  require(e.population_size > e.immigrants_per_gen, "immigrants", "must be below population_size");
  require(e.tournament_size >= 1, "tournament_size", "must be >= 1");
  require(e.tau >= 1, "tau", "must be >= 1");
  require(e.diversity.lambda >= 0.0, "diversity.lambda", "must be >= 0");
  require(e.diversity.sample_size >= 1, "diversity.sample_size", "must be >= 1");
  e.validate();

  if (auto v = get("variants")) s.variants = parse_variants(*v);
  if (auto v = get("grid.lambdas")) s.grid_lambdas = parse_real_list("grid.lambdas", *v);
  if (auto v = get("parallel")) s.parallel = parse_bool("parallel", *v);
  return s;
}

void ExperimentSpec::validate() const {
  if (variants.empty()) throw ConfigError("variants", "at least one variant is required");
  std::set<std::string> names;
  for (const Variant& v : variants) {
    if (!safe_name(v.name)) throw ConfigError("variants", "invalid variant name '" + v.name + "'");
    if (!names.insert(v.name).second) throw ConfigError("variants", "duplicate variant name '" + v.name + "'");
    if (!(v.lambda >= 0.0)) throw ConfigError("variants", "lambda of '" + v.name + "' must be >= 0");
  }
  if (seeds.empty()) throw ConfigError("runs", "at least one seed is required");
  try {
    engine.validate();
    problem.arena.validate();
  } catch (const InvalidParameter& ex) {
    throw ConfigError("engine", ex.what());
  }
}

void GridSpec::validate() const {
  if (lambda_values.empty()) throw ConfigError("grid.lambdas", "at least one value is required");
  if (!std::is_sorted(lambda_values.begin(), lambda_values.end())) {
    throw ConfigError("grid.lambdas", "values must be sorted ascending");
  }
  if (lambda_values.front() < 0.0) throw ConfigError("grid.lambdas", "values must be >= 0");
  if (seeds.empty()) throw ConfigError("runs", "at least one seed is required");
  try {
    engine.validate();
    problem.arena.validate();
  } catch (const InvalidParameter& ex) {
    throw ConfigError("engine", ex.what());
  }
}

ExperimentResult run_variants(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<RunJob> jobs;
  for (const Variant& v : spec.variants) {
    for (std::uint64_t seed : spec.seeds) {
      RunJob job{spec.engine, spec.problem, seed};
      job.config.diversity.metric = v.metric;
      job.config.diversity.lambda = v.lambda;
      job.config.rng_seed = seed;
      jobs.push_back(std::move(job));
    }
  }
  auto traces = run_jobs(jobs, spec.parallel);

  ExperimentResult result{spec.variants, spec.seeds, {}};
  auto it = std::make_move_iterator(traces.begin());
  for (std::size_t v = 0; v < spec.variants.size(); ++v) {
    result.traces.emplace_back(it, it + static_cast<std::ptrdiff_t>(spec.seeds.size()));
    it += static_cast<std::ptrdiff_t>(spec.seeds.size());
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ensure_directory(spec.output_dir);
  ExperimentResult result = run_variants(spec);
  for (std::size_t v = 0; v < result.variants.size(); ++v) {
    const auto path = spec.output_dir / ("raw_" + result.variants[v].name + ".csv");
    auto out = open_output(path);
    write_raw_csv(out, result.variants[v], result.seeds, result.traces[v]);
    close_checked(out, path);
  }
  const auto path = spec.output_dir / "aggregate.csv";
  auto out = open_output(path);
  write_aggregate_csv(out, result);
  close_checked(out, path);
  return result;
}

std::vector<double> final_fitness(std::span<const EvolutionTrace> traces) {
  std::vector<double> finals;
  finals.reserve(traces.size());
  for (const auto& trace : traces) finals.push_back(trace.empty() ? 0.0 : trace.back().mean_raw_fitness);
  return finals;
}

GridReport evaluate_grid(const GridSpec& spec) {
  spec.validate();
  std::vector<RunJob> jobs;
  for (double lambda : spec.lambda_values) {
    for (std::uint64_t seed : spec.seeds) {
      RunJob job{spec.engine, spec.problem, seed};
      job.config.diversity.metric = spec.metric;
      job.config.diversity.lambda = lambda;
      job.config.rng_seed = seed;
      jobs.push_back(std::move(job));
    }
  }
  const auto traces = run_jobs(jobs, spec.parallel);

  GridReport report;
  report.metric = spec.metric;
  const std::size_t per = spec.seeds.size();
  double best_mean = 0.0;
  for (std::size_t i = 0; i < spec.lambda_values.size(); ++i) {
    const auto finals = final_fitness(std::span(traces).subspan(i * per, per));
    GridRow row{spec.lambda_values[i], mean(finals), stddev(finals)};
    if (i == 0 || row.mean_final_fitness > best_mean) {
      best_mean = row.mean_final_fitness;
      report.best_lambda = row.lambda;
    }
    report.rows.push_back(row);
  }
  return report;
}

GridReport grid_search(const GridSpec& spec) {
  spec.validate();
  ensure_directory(spec.output_dir);
  GridReport report = evaluate_grid(spec);
  const auto path = spec.output_dir / ("grid_" + std::string(to_string(spec.metric)) + ".csv");
  auto out = open_output(path);
  write_grid_csv(out, report);
  close_checked(out, path);
  return report;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  // "-0.000000" would make reruns depend on the sign of tiny values.
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

void write_raw_csv(std::ostream& out, const Variant& variant, std::span<const std::uint64_t> seeds,
                   std::span<const EvolutionTrace> traces) {
  out << kRawHeader << '\n';
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    for (const GenerationStats& row : traces[s]) {
      out << variant.name << ',' << seeds[s] << ',' << row.generation << ','
          << format_real(row.mean_raw_fitness) << ',' << format_real(row.best_raw_fitness) << ','
          << format_real(row.mean_probe_diversity) << '\n';
    }
  }
}

void write_aggregate_csv(std::ostream& out, const ExperimentResult& result) {
  out << kAggregateHeader << '\n';
  for (std::size_t v = 0; v < result.variants.size(); ++v) {
    const auto& runs = result.traces[v];
    if (runs.empty()) continue;
    const std::size_t generations = runs.front().size();
    std::vector<double> values(runs.size());
    for (std::size_t g = 0; g < generations; ++g) {
      for (std::size_t s = 0; s < runs.size(); ++s) values[s] = runs[s][g].mean_raw_fitness;
      out << result.variants[v].name << ',' << runs.front()[g].generation << ','
          << format_real(mean(values)) << ',' << format_real(stddev(values)) << '\n';
    }
  }
}

void write_grid_csv(std::ostream& out, const GridReport& report) {
  out << kGridHeader << '\n';
  for (const GridRow& row : report.rows) {
    out << format_real(row.lambda) << ',' << format_real(row.mean_final_fitness) << ','
        << format_real(row.std_final_fitness) << '\n';
  }
}

void dump_genealogy(const GenealogyGraph& graph, const std::filesystem::path& path) {
  if (path.has_parent_path()) ensure_directory(path.parent_path());
  auto out = open_output(path);
  graph.write_log(out);
  close_checked(out, path);
}

}  // namespace gendiv
