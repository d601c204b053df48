#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "gendiv/diversity.hpp"
#include "gendiv/errors.hpp"
#include "gendiv/genealogy.hpp"
#include "gendiv/individual.hpp"
#include "gendiv/rng.hpp"
#include "gendiv/routing.hpp"

namespace gendiv {

struct EngineConfig {
  std::size_t population_size = 20;
  std::size_t generations = 1000;
  double mutation_prob = 0.2;
  double crossover_prob = 0.3;
  std::size_t tournament_size = 2;
  std::size_t immigrants_per_gen = 2;
  std::size_t tau = TrashVector::kDefaultTau;
  DiversityConfig diversity;
  std::uint64_t rng_seed = 1;

  /// Throws InvalidParameter naming the offending field.
  void validate() const;
};

/// Statistics of one generation, always on raw fitness.
struct GenerationStats {
  std::uint32_t generation = 0;
  double mean_raw_fitness = 0.0;
  double best_raw_fitness = 0.0;
  double mean_probe_diversity = 0.0;
  ActionSequence best_genome{};

  friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

using EvolutionTrace = std::vector<GenerationStats>;

/// Mutable state of one run. `augmented` holds f' of each population member
/// from the most recent evaluation, aligned with `population`, which is kept
/// sorted by node id.
struct RunState {
  std::vector<Individual> population;
  std::vector<double> augmented;
  GenealogyGraph graph;
  std::uint32_t generation = 0;
};

struct RunResult {
  EvolutionTrace trace;
  GenealogyGraph graph;
  std::vector<Individual> population;
};

/// Random genomes and trash vectors, all recorded as genesis nodes, followed
/// by one f' evaluation of the initial population.
RunState initialize(const EngineConfig& config, const RoutingProblem& problem, Rng& rng);

/// Draws `k` distinct members and returns the one with the larger fitness;
/// the smaller node id wins ties. Throws InvalidParameter on an empty pool.
template <class FitnessFn>
const Individual& tournament_select(std::span<const Individual> pool, std::size_t k,
                                    FitnessFn&& fitness, Rng& rng) {
  if (pool.empty()) throw InvalidParameter("tournament pool is empty");
  const Individual* best = nullptr;
  double best_fitness = 0.0;
  for (std::size_t pick : sample_distinct(pool.size(), k, rng)) {
    const Individual& candidate = pool[pick];
    const double f = fitness(candidate);
    if (best == nullptr || f > best_fitness || (f == best_fitness && candidate.node < best->node)) {
      best = &candidate;
      best_fitness = f;
    }
  }
  return *best;
}

/// One generation: mutation scan, recombination scan, immigrants, f'
/// evaluation of the pooled population, then truncation to population_size.
void step_generation(RunState& state, const EngineConfig& config, const RoutingProblem& problem,
                     Rng& rng);

/// Raw-fitness statistics of the current population. The probe sample is
/// drawn from `probe_rng`, a stream separate from evolution.
GenerationStats population_stats(const RunState& state, std::size_t probe_size, Rng& probe_rng);

/// Seed for the probe stream derived from the run seed.
std::uint64_t probe_seed(std::uint64_t seed) noexcept;

/// Full run: initialize plus `generations` steps, one trace row per step.
/// Deterministic for a given config, problem and seed.
RunResult evolve(const EngineConfig& config, const RoutingProblem& problem, std::uint64_t seed);

}  // namespace gendiv
