#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "gendiv/errors.hpp"
#include "gendiv/experiment.hpp"
#include "gendiv/stats.hpp"

using namespace gendiv;
namespace fs = std::filesystem;

namespace {

ConfigMap parse(const std::string& text) {
  std::istringstream in(text);
  return ConfigMap::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("gendiv_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentSpec small_spec(const fs::path& out) {
  ExperimentSpec spec;
  spec.variants = {{"baseline", MetricKind::none, 0.0}};
  spec.seeds = {1, 2};
  spec.engine.generations = 10;
  spec.output_dir = out;
  return spec;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse("# comment\n generations = 50 \n\narena.start = 0.2, 0.4  # trailing\n");
  CHECK(c.get("generations") == "50");
  CHECK(c.get("arena.start") == "0.2, 0.4");
  CHECK_FALSE(c.get("tau").has_value());
  CHECK_THROWS_AS(parse("generations 50\n"), ConfigError);
  CHECK_THROWS_AS(parse("tau = 1\ntau = 2\n"), ConfigError);
}

TEST_CASE("settings defaults match the experiment setup") {
  const Settings s = settings_from_config(ConfigMap{});
  CHECK(s.engine.population_size == 20);
  CHECK(s.engine.generations == 1000);
  CHECK(s.engine.mutation_prob == 0.2);
  CHECK(s.engine.crossover_prob == 0.3);
  CHECK(s.engine.tournament_size == 2);
  CHECK(s.engine.immigrants_per_gen == 2);
  CHECK(s.engine.tau == 32);
  CHECK(s.engine.diversity.sample_size == 5);
  CHECK(s.seeds.size() == 10);
  CHECK(s.seeds.front() == 1);
  CHECK(s.seeds.back() == 10);
  CHECK(s.variants.size() == 4);
  CHECK(s.problem.mutation_sigma == 0.1);
  CHECK(s.problem.arena == Arena{});
}

TEST_CASE("settings read every key") {
  const auto c = parse(
      "seed = 7\nruns = 3\npopulation_size = 12\ngenerations = 40\nmutation.prob = 0.5\n"
      "mutation.sigma = 0.2\ncrossover.prob = 0.1\ntournament_size = 3\nimmigrants = 1\ntau = 64\n"
      "diversity.metric = trash_bits\ndiversity.lambda = 2.5\ndiversity.sample_size = 4\n"
      "arena.bounds = 0,0,2,2\narena.start = 0.2,1\narena.goal = 1.5,0.5,1.9,1.5\n"
      "arena.obstacle = 0.8,0,1.2,1.6\narena.step_norm = linf\n"
      "variants = a:none:0, b:gdist:1.5\ngrid.lambdas = 0, 1, 2\nparallel = false\n");
  const Settings s = settings_from_config(c);
  CHECK(s.seeds == std::vector<std::uint64_t>{7, 8, 9});
  CHECK(s.engine.population_size == 12);
  CHECK(s.engine.generations == 40);
  CHECK(s.engine.mutation_prob == 0.5);
  CHECK(s.engine.crossover_prob == 0.1);
  CHECK(s.engine.tournament_size == 3);
  CHECK(s.engine.immigrants_per_gen == 1);
  CHECK(s.engine.tau == 64);
  CHECK(s.engine.diversity.metric == MetricKind::trash_bits);
  CHECK(s.engine.diversity.lambda == 2.5);
  CHECK(s.engine.diversity.sample_size == 4);
  CHECK(s.problem.mutation_sigma == 0.2);
  CHECK(s.problem.arena.bounds == Rect{0, 0, 2, 2});
  CHECK(s.problem.arena.start == Vec2{0.2, 1});
  CHECK(s.problem.arena.step_norm == StepNorm::linf);
  REQUIRE(s.variants.size() == 2);
  CHECK(s.variants[1] == Variant{"b", MetricKind::genealogical_tree, 1.5});
  CHECK(s.grid_lambdas == std::vector<double>{0, 1, 2});
  CHECK_FALSE(s.parallel);
}

TEST_CASE("config errors name the offending key") {
  auto key_of = [](const std::string& text) {
    try {
      settings_from_config(parse(text));
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  CHECK(key_of("generations = many\n") == "generations");
  CHECK(key_of("mutation.prob = 1.5\n") == "mutation.prob");
  CHECK(key_of("immigrants = 20\n") == "immigrants");
  CHECK(key_of("bogus.key = 1\n") == "bogus.key");
  CHECK(key_of("arena.goal = 0.5,0.3,0.9,0.7\n") == "arena.goal");
  CHECK(key_of("arena.start = 1,2,3\n") == "arena.start");
  CHECK(key_of("diversity.metric = cosine\n") == "diversity.metric");
  CHECK(key_of("variants = a:none\n") == "variants");
  CHECK(key_of("mutation.sigma = 0\n") == "mutation.sigma");
  CHECK(key_of("runs = 0\n") == "runs");
}

TEST_CASE("environment overrides use the GENDIV_ prefix") {
  CHECK(env_name("diversity.lambda") == "GENDIV_DIVERSITY_LAMBDA");
  ConfigMap c = parse("generations = 50\ntau = 16\n");
  const std::map<std::string, std::string> env{{"GENDIV_GENERATIONS", "70"}, {"GENDIV_SEED", "4"}};
  apply_env_overrides(c, known_config_keys(), [&](const char* name) -> const char* {
    const auto it = env.find(name);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  CHECK(c.get("generations") == "70");
  CHECK(c.get("seed") == "4");
  CHECK(c.get("tau") == "16");
}

TEST_CASE("experiment spec validation") {
  ExperimentSpec spec = small_spec("unused");
  spec.variants.push_back(spec.variants.front());
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = small_spec("unused");
  spec.variants[0].name = "../evil";
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = small_spec("unused");
  spec.seeds.clear();
  CHECK_THROWS_AS(spec.validate(), ConfigError);

  GridSpec grid;
  grid.lambda_values = {1.0, 0.5};
  grid.seeds = {1};
  CHECK_THROWS_AS(grid.validate(), ConfigError);
}

TEST_CASE("run_experiment writes schema-conformant CSVs") {
  const auto dir = scratch("run");
  ExperimentSpec spec = small_spec(dir);
  run_experiment(spec);
  const std::string raw = slurp(dir / "raw_baseline.csv");
  CHECK(raw.rfind(std::string(kRawHeader) + "\n", 0) == 0);
  CHECK(lines(raw) == 1 + 20);
  CHECK(raw.find('\r') == std::string::npos);
  const std::string agg = slurp(dir / "aggregate.csv");
  CHECK(agg.rfind(std::string(kAggregateHeader) + "\n", 0) == 0);
  CHECK(lines(agg) == 1 + 10);

  std::istringstream rows(raw);
  std::string line;
  std::getline(rows, line);
  std::getline(rows, line);
  CHECK(line.rfind("baseline,1,1,", 0) == 0);
  const auto last_comma = line.rfind(',');
  CHECK(line.size() - line.find('.', last_comma) - 1 == 6);

  spec.parallel = false;
  const auto dir2 = scratch("run_serial");
  spec.output_dir = dir2;
  run_experiment(spec);
  CHECK(slurp(dir2 / "raw_baseline.csv") == raw);
  CHECK(slurp(dir2 / "aggregate.csv") == agg);
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("run_experiment reports unwritable output") {
  const auto blocker = scratch("blocker");
  { std::ofstream(blocker) << "file"; }
  CHECK_THROWS_AS(run_experiment(small_spec(blocker / "sub")), IoError);
  fs::remove_all(blocker);
}

TEST_CASE("grid search reports one row per lambda and picks the argmax") {
  GridSpec spec;
  spec.metric = MetricKind::trash_bits;
  spec.lambda_values = {0.0, 1.0};
  spec.seeds = {1, 2};
  spec.engine.generations = 15;
  spec.output_dir = scratch("grid");
  const auto report = grid_search(spec);
  REQUIRE(report.rows.size() == 2);
  const std::string csv = slurp(spec.output_dir / "grid_trash_bits.csv");
  CHECK(lines(csv) == 3);
  CHECK(csv.rfind(std::string(kGridHeader) + "\n", 0) == 0);
  const auto& best = report.rows[0].mean_final_fitness >= report.rows[1].mean_final_fitness ? report.rows[0]
                                                                                             : report.rows[1];
  CHECK(report.best_lambda == best.lambda);

  // lambda 0 reduces to the baseline.
  ExperimentSpec base = small_spec("unused");
  base.engine.generations = 15;
  const auto baseline = run_variants(base);
  CHECK(report.rows[0].mean_final_fitness == doctest::Approx(mean(final_fitness(baseline.traces[0]))));
  fs::remove_all(spec.output_dir);
}

TEST_CASE("grid ties go to the smaller lambda") {
  GridSpec spec;
  spec.metric = MetricKind::domain;
  spec.lambda_values = {0.0, 0.0};
  spec.seeds = {3};
  spec.engine.generations = 5;
  const auto report = evaluate_grid(spec);
  CHECK(report.rows[0].mean_final_fitness == report.rows[1].mean_final_fitness);
  CHECK(report.best_lambda == 0.0);
}

TEST_CASE("format_real uses six decimals") {
  CHECK(format_real(1.0) == "1.000000");
  CHECK(format_real(0.1234567) == "0.123457");
  CHECK(format_real(-1e-9) == "0.000000");
}

TEST_CASE("dump_genealogy writes one line per node") {
  EngineConfig config;
  config.generations = 0;
  const auto run = evolve(config, {}, 1);
  const auto file = scratch("dump") / "g.log";
  dump_genealogy(run.graph, file);
  const std::string text = slurp(file);
  CHECK(lines(text) == 20);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) CHECK(line.find(",0,genesis") != std::string::npos);
  fs::remove_all(file.parent_path());
}

TEST_CASE("the shipped config file spells out the defaults") {
  const auto shipped = settings_from_config(ConfigMap::load(fs::path(GENDIV_SOURCE_DIR) / "configs/experiment.cfg"));
  const auto defaults = settings_from_config(ConfigMap{});
  CHECK(shipped.seeds == defaults.seeds);
  CHECK(shipped.variants == defaults.variants);
  CHECK(shipped.problem.arena == defaults.problem.arena);
  CHECK(shipped.problem.mutation_sigma == defaults.problem.mutation_sigma);
  CHECK(shipped.engine.generations == defaults.engine.generations);
  CHECK(shipped.engine.tau == defaults.engine.tau);
  CHECK(shipped.grid_lambdas.empty());
  CHECK_THROWS_AS(ConfigMap::load("/nonexistent/gendiv.cfg"), IoError);
}
