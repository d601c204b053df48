// gendiv: run the routing experiment, lambda grid searches and genealogy dumps.
//
//   gendiv run --config exp.cfg --out results/
//   gendiv grid --config exp.cfg --metric trash_bits --out results/
//   gendiv dump-genealogy --config exp.cfg --seed 3 --out run3.log
//
// Settings precedence: built-in defaults < config file < GENDIV_* environment
// variables < command-line flags.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gendiv/config.hpp"
#include "gendiv/errors.hpp"
#include "gendiv/experiment.hpp"
#include "gendiv/stats.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  bool serial = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Run configuration file (key = value)")->required();
  cmd->add_option("--set", opts.overrides, "Override a config key, e.g. --set generations=200");
  cmd->add_flag("--serial", opts.serial, "Run seeds one after another instead of in parallel");
}

gendiv::Settings load_settings(const CommonOptions& opts,
                               const std::vector<std::pair<std::string, std::string>>& flags) {
  gendiv::ConfigMap config = gendiv::ConfigMap::load(opts.config_path);
  gendiv::apply_env_overrides(config, gendiv::known_config_keys(),
                              [](const char* name) { return std::getenv(name); });
  for (const auto& item : opts.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw gendiv::ConfigError(item, "--set expects key=value");
    config.set(std::string(gendiv::trim(item.substr(0, eq))),
               std::string(gendiv::trim(item.substr(eq + 1))));
  }
  for (const auto& [key, value] : flags) config.set(key, value);
  gendiv::Settings settings = gendiv::settings_from_config(config);
  if (opts.serial) settings.parallel = false;
  return settings;
}

int run_command(const CommonOptions& opts, const std::string& out_dir) {
  const auto settings = load_settings(opts, {});
  gendiv::ExperimentSpec spec{settings.variants, settings.seeds, settings.engine, settings.problem,
                              out_dir, settings.parallel};
  const auto result = gendiv::run_experiment(spec);
  for (std::size_t v = 0; v < result.variants.size(); ++v) {
    const auto finals = gendiv::final_fitness(result.traces[v]);
    std::cout << result.variants[v].name << ": final mean raw fitness "
              << gendiv::format_real(gendiv::mean(finals)) << " +/- "
              << gendiv::format_real(gendiv::stddev(finals)) << " over " << finals.size()
              << " seeds\n";
  }
  std::cout << "wrote " << out_dir << '\n';
  return 0;
}

int grid_command(const CommonOptions& opts, const std::string& metric_name,
                 const std::string& out_dir) {
  const auto settings = load_settings(opts, {});
  gendiv::MetricKind metric;
  try {
    metric = gendiv::parse_metric_kind(metric_name);
  } catch (const gendiv::InvalidParameter& e) {
    throw gendiv::ConfigError("--metric", e.what());
  }
  gendiv::GridSpec spec{metric,
                        settings.grid_lambdas.empty() ? gendiv::default_lambda_grid(metric)
                                                      : settings.grid_lambdas,
                        settings.seeds,
                        settings.engine,
                        settings.problem,
                        out_dir,
                        settings.parallel};
  const auto report = gendiv::grid_search(spec);
  std::cout << gendiv::kGridHeader << '\n';
  for (const auto& row : report.rows) {
    std::cout << gendiv::format_real(row.lambda) << ',' << gendiv::format_real(row.mean_final_fitness)
              << ',' << gendiv::format_real(row.std_final_fitness) << '\n';
  }
  std::cout << "best lambda for " << gendiv::to_string(metric) << ": "
            << gendiv::format_real(report.best_lambda) << '\n';
  return 0;
}

int dump_command(const CommonOptions& opts, std::uint64_t seed, const std::string& out_file) {
  const auto settings = load_settings(opts, {{"seed", std::to_string(seed)}});
  const auto result = gendiv::evolve(settings.engine, settings.problem, seed);
  gendiv::dump_genealogy(result.graph, out_file);
  std::cout << "wrote " << result.graph.size() << " nodes to " << out_file << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genealogical diversity experiments on the obstacle routing task"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Run every variant over all seeds and write CSV traces");
  add_common(run, run_opts);
  run->add_option("--out", run_out, "Output directory")->required();

  CommonOptions grid_opts;
  std::string grid_metric;
  std::string grid_out;
  auto* grid = app.add_subcommand("grid", "Grid-search lambda for one diversity metric");
  add_common(grid, grid_opts);
  grid->add_option("--metric", grid_metric, "none, domain, genealogical_tree or trash_bits")->required();
  grid->add_option("--out", grid_out, "Output directory")->required();

  CommonOptions dump_opts;
  std::uint64_t dump_seed = 1;
  std::string dump_out;
  auto* dump = app.add_subcommand("dump-genealogy", "Run one seed and write its genealogy log");
  add_common(dump, dump_opts);
  dump->add_option("--seed", dump_seed, "Run seed")->required();
  dump->add_option("--out", dump_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return run_command(run_opts, run_out);
    if (*grid) return grid_command(grid_opts, grid_metric, grid_out);
    if (*dump) return dump_command(dump_opts, dump_seed, dump_out);
  } catch (const gendiv::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const gendiv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const gendiv::InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
