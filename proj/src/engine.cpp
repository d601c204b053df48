#include "gendiv/engine.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gendiv/errors.hpp"

namespace gendiv {
namespace {

constexpr std::size_t kProbeSize = 5;

Individual make_individual(NodeId node, const ActionSequence& genome, TrashVector trash,
                           const RoutingProblem& problem) {
  return Individual{node, genome, std::move(trash),
                    static_cast<double>(simulate(genome, problem.arena).raw_fitness)};
}

std::vector<double> evaluate(std::span<const Individual> pool, const EngineConfig& config,
                             const GenealogyGraph& graph, Rng& rng) {
  DiversityMetric metric(config.diversity.metric, &graph);
  std::vector<double> augmented;
  augmented.reserve(pool.size());
  for (const Individual& x : pool) {
    augmented.push_back(augmented_fitness(x, pool, x.raw_fitness, config.diversity, rng, metric));
  }
  return augmented;
}

}  // namespace

void EngineConfig::validate() const {
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter(std::string(name) + " must be in [0, 1]");
  };
  probability(mutation_prob, "mutation_prob");
  probability(crossover_prob, "crossover_prob");
  if (population_size == 0) throw InvalidParameter("population_size must be >= 1");
  if (population_size <= immigrants_per_gen) {
    throw InvalidParameter("population_size must exceed immigrants_per_gen");
  }
  if (tournament_size == 0) throw InvalidParameter("tournament_size must be >= 1");
  if (tau == 0) throw InvalidParameter("tau must be >= 1");
  if (!(diversity.lambda >= 0.0)) throw InvalidParameter("diversity.lambda must be >= 0");
  if (diversity.sample_size == 0) throw InvalidParameter("diversity.sample_size must be >= 1");
}

RunState initialize(const EngineConfig& config, const RoutingProblem& problem, Rng& rng) {
  config.validate();
  problem.arena.validate();
  RunState state;
  state.population.reserve(config.population_size);
  for (std::size_t i = 0; i < config.population_size; ++i) {
    const ActionSequence genome = random_genome(rng);
    TrashVector trash = random_trash(config.tau, rng);
    const NodeId node = state.graph.record_birth({}, OpKind::genesis, 0);
    state.population.push_back(make_individual(node, genome, std::move(trash), problem));
  }
  state.augmented = evaluate(state.population, config, state.graph, rng);
  return state;
}

void step_generation(RunState& state, const EngineConfig& config, const RoutingProblem& problem,
                     Rng& rng) {
  const std::uint32_t gen = ++state.generation;
  const std::vector<Individual>& current = state.population;
  std::vector<Individual> pool = current;

  for (const Individual& parent : current) {
    if (!bernoulli(config.mutation_prob, rng)) continue;
    const ActionSequence genome = mutate_genome(parent.genome, problem.mutation_sigma, rng);
    TrashVector trash = flip_one_bit(parent.trash, rng);
    const NodeId parents[] = {parent.node};
    const NodeId node = state.graph.record_birth(parents, OpKind::mutation, gen);
    pool.push_back(make_individual(node, genome, std::move(trash), problem));
  }

  for (std::size_t i = 0; i < current.size(); ++i) {
    if (!bernoulli(config.crossover_prob, rng)) continue;
    if (current.size() < 2) continue;
    std::vector<Individual> candidates;
    std::vector<double> candidate_fitness;
    for (std::size_t j = 0; j < current.size(); ++j) {
      if (j == i) continue;
      candidates.push_back(current[j]);
      candidate_fitness.push_back(state.augmented[j]);
    }
    const Individual& partner = tournament_select(
        std::span<const Individual>(candidates), config.tournament_size,
        [&](const Individual& c) { return candidate_fitness[&c - candidates.data()]; }, rng);
    const Individual& self = current[i];
    const ActionSequence genome = crossover_genome(self.genome, partner.genome, rng);
    TrashVector trash = uniform_cross(self.trash, partner.trash, rng);
    const NodeId parents[] = {self.node, partner.node};
    const NodeId node = state.graph.record_birth(parents, OpKind::recombination, gen);
    pool.push_back(make_individual(node, genome, std::move(trash), problem));
  }

  for (std::size_t i = 0; i < config.immigrants_per_gen; ++i) {
    const ActionSequence genome = random_genome(rng);
    TrashVector trash = random_trash(config.tau, rng);
    const NodeId node = state.graph.record_birth({}, OpKind::genesis, gen);
    pool.push_back(make_individual(node, genome, std::move(trash), problem));
  }

  const std::vector<double> augmented = evaluate(pool, config, state.graph, rng);

  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (augmented[a] != augmented[b]) return augmented[a] > augmented[b];
    return pool[a].node < pool[b].node;
  });
  order.resize(config.population_size);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pool[a].node < pool[b].node; });

  std::vector<Individual> survivors;
  std::vector<double> survivor_fitness;
  survivors.reserve(order.size());
  survivor_fitness.reserve(order.size());
  for (std::size_t idx : order) {
    survivors.push_back(std::move(pool[idx]));
    survivor_fitness.push_back(augmented[idx]);
  }
  state.population = std::move(survivors);
  state.augmented = std::move(survivor_fitness);
}

GenerationStats population_stats(const RunState& state, std::size_t probe_size, Rng& probe_rng) {
  GenerationStats stats;
  stats.generation = state.generation;
  const auto& pop = state.population;
  if (pop.empty()) return stats;

  const Individual* best = &pop.front();
  double sum = 0.0;
  for (const Individual& x : pop) {
    sum += x.raw_fitness;
    if (x.raw_fitness > best->raw_fitness ||
        (x.raw_fitness == best->raw_fitness && x.node < best->node)) {
      best = &x;
    }
  }
  stats.mean_raw_fitness = sum / static_cast<double>(pop.size());
  stats.best_raw_fitness = best->raw_fitness;
  stats.best_genome = best->genome;

  const auto probe = sample_distinct(pop.size(), probe_size, probe_rng);
  double pair_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < probe.size(); ++a) {
    for (std::size_t b = a + 1; b < probe.size(); ++b) {
      pair_sum += domain_distance(pop[probe[a]].genome, pop[probe[b]].genome);
      ++pairs;
    }
  }
  stats.mean_probe_diversity = pairs == 0 ? 0.0 : pair_sum / static_cast<double>(pairs);
  return stats;
}

std::uint64_t probe_seed(std::uint64_t seed) noexcept { return seed ^ 0x9e3779b97f4a7c15ULL; }

RunResult evolve(const EngineConfig& config, const RoutingProblem& problem, std::uint64_t seed) {
  Rng rng(seed);
  Rng probe_rng(probe_seed(seed));
  RunState state = initialize(config, problem, rng);
  RunResult result;
  result.trace.reserve(config.generations);
  for (std::size_t g = 0; g < config.generations; ++g) {
    step_generation(state, config, problem, rng);
    result.trace.push_back(population_stats(state, kProbeSize, probe_rng));
  }
  result.graph = std::move(state.graph);
  result.population = std::move(state.population);
  return result;
}

}  // namespace gendiv
