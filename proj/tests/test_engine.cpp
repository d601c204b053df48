#include <map>
#include <vector>

#include "doctest.h"
#include "gendiv/engine.hpp"
#include "gendiv/errors.hpp"

using namespace gendiv;

namespace {

EngineConfig small_config(MetricKind metric = MetricKind::none, double lambda = 0.0) {
  EngineConfig c;
  c.generations = 60;
  c.diversity = {lambda, 5, metric};
  return c;
}

Individual bare(std::uint32_t id) { return Individual{node_id(id), {}, TrashVector(8), 0.0}; }

}  // namespace

TEST_CASE("config validation") {
  EngineConfig c;
  CHECK_NOTHROW(c.validate());
  c.mutation_prob = 1.5;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c = EngineConfig{};
  c.immigrants_per_gen = 20;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c = EngineConfig{};
  c.diversity.lambda = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
}

TEST_CASE("initialize builds a genesis population") {
  Rng rng(41);
  const EngineConfig config;
  const RunState state = initialize(config, {}, rng);
  CHECK(state.population.size() == 20);
  CHECK(state.augmented.size() == 20);
  CHECK(state.graph.size() == 20);
  for (const Individual& x : state.population) {
    CHECK(state.graph.node(x.node).op == OpKind::genesis);
    CHECK(state.graph.parents(x.node).empty());
    CHECK(x.trash.tau() == 32);
    CHECK(x.raw_fitness == simulate(x.genome, Arena{}).raw_fitness);
  }
  for (const Individual& a : state.population) {
    for (const Individual& b : state.population) {
      if (a.node != b.node) CHECK(state.graph.gdist(a.node, b.node) == 1.0);
    }
  }
}

TEST_CASE("tournament_select") {
  Rng rng(42);
  const std::vector<Individual> one{bare(4)};
  auto zero = [](const Individual&) { return 0.0; };
  CHECK(tournament_select(std::span<const Individual>(one), 2, zero, rng).node == node_id(4));

  const std::vector<Individual> two{bare(3), bare(8)};
  std::map<NodeId, double> f{{node_id(3), 3.0}, {node_id(8), 5.0}};
  auto lookup = [&](const Individual& x) { return f.at(x.node); };
  for (int t = 0; t < 20; ++t) {
    CHECK(tournament_select(std::span<const Individual>(two), 2, lookup, rng).node == node_id(8));
  }
  f[node_id(3)] = 5.0;
  for (int t = 0; t < 20; ++t) {
    CHECK(tournament_select(std::span<const Individual>(two), 2, lookup, rng).node == node_id(3));
  }
  CHECK_THROWS_AS(tournament_select(std::span<const Individual>(), 2, zero, rng), InvalidParameter);
}

TEST_CASE("step_generation keeps the population size and records births") {
  Rng rng(43);
  const EngineConfig config = small_config(MetricKind::trash_bits, 1.0);
  RunState state = initialize(config, {}, rng);
  for (int gen = 1; gen <= 30; ++gen) {
    const std::size_t before = state.graph.size();
    std::map<NodeId, TrashVector> previous;
    for (const auto& x : state.population) previous.emplace(x.node, x.trash);

    step_generation(state, config, {}, rng);
    CHECK(state.population.size() == 20);
    CHECK(state.generation == static_cast<std::uint32_t>(gen));
    for (std::size_t id = before; id < state.graph.size(); ++id) {
      const auto& node = state.graph.node(node_id(id));
      CHECK(node.generation == static_cast<std::uint32_t>(gen));
      for (NodeId p : node.parents) {
        CHECK(index(p) < id);
        CHECK(previous.count(p) == 1);
      }
    }
    for (const auto& x : state.population) {
      const auto& node = state.graph.node(x.node);
      if (node.generation != static_cast<std::uint32_t>(gen)) continue;
      if (node.op == OpKind::recombination) {
        const auto& a = previous.at(node.parents[0]);
        const auto& b = previous.at(node.parents[1]);
        for (std::size_t i = 0; i < x.trash.tau(); ++i) CHECK((x.trash[i] == a[i] || x.trash[i] == b[i]));
      } else if (node.op == OpKind::mutation) {
        CHECK(hamming(x.trash, previous.at(node.parents[0])) == 1);
      }
    }
  }
}

TEST_CASE("a step with every operator disabled changes nothing") {
  Rng rng(44);
  EngineConfig config = small_config();
  config.mutation_prob = 0.0;
  config.crossover_prob = 0.0;
  config.immigrants_per_gen = 0;
  RunState state = initialize(config, {}, rng);
  const auto before = state.population;
  step_generation(state, config, {}, rng);
  REQUIRE(state.population.size() == before.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(state.population[i].node == before[i].node);
    CHECK(state.population[i].genome == before[i].genome);
    CHECK(state.population[i].trash == before[i].trash);
  }
  CHECK(state.graph.size() == 20);
}

TEST_CASE("evolve is deterministic and bounded") {
  const EngineConfig config = small_config(MetricKind::genealogical_tree, 1.0);
  const auto a = evolve(config, {}, 9);
  const auto b = evolve(config, {}, 9);
  CHECK(a.trace == b.trace);
  CHECK(a.trace.size() == 60);
  const auto c = evolve(config, {}, 10);
  CHECK_FALSE(a.trace == c.trace);
  for (std::size_t g = 0; g < a.trace.size(); ++g) {
    CHECK(a.trace[g].generation == g + 1);
    CHECK(a.trace[g].mean_raw_fitness >= 0.0);
    CHECK(a.trace[g].mean_raw_fitness <= 10.0);
    CHECK(a.trace[g].best_raw_fitness >= a.trace[g].mean_raw_fitness);
  }
  const std::size_t bound = 20 + 60 * (2 * 20 + 2);
  CHECK(a.graph.size() <= bound);
}

TEST_CASE("default config yields one row per generation") {
  const auto run = evolve(EngineConfig{}, {}, 3);
  CHECK(run.trace.size() == 1000);
}

TEST_CASE("baseline best raw fitness never decreases") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto run = evolve(small_config(), {}, seed);
    for (std::size_t g = 1; g < run.trace.size(); ++g) {
      CHECK(run.trace[g].best_raw_fitness >= run.trace[g - 1].best_raw_fitness);
    }
  }
}

TEST_CASE("every variant with lambda 0 reproduces the baseline trace") {
  const auto baseline = evolve(small_config(), {}, 5);
  for (auto kind : {MetricKind::domain, MetricKind::genealogical_tree, MetricKind::trash_bits}) {
    const auto run = evolve(small_config(kind, 0.0), {}, 5);
    CHECK(run.trace == baseline.trace);
  }
}
