#pragma once

// Batch kernels in two flavours: `serial` is the reference implementation and
// `parallel` the OpenMP version. Both must produce identical results.

#include <cstdint>
#include <span>
#include <vector>

#include "gendiv/engine.hpp"
#include "gendiv/genealogy.hpp"
#include "gendiv/trash_genes.hpp"

namespace gendiv {

/// Row-major n x n distance matrix.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;
};

/// One independent evolution run.
struct RunJob {
  EngineConfig config;
  RoutingProblem problem;
  std::uint64_t seed = 0;
};

namespace serial {

DistanceMatrix pairwise_tdist(std::span<const TrashVector> vectors);
DistanceMatrix pairwise_gdist(const GenealogyGraph& graph, std::span<const NodeId> nodes);
std::vector<EvolutionTrace> run_batch(std::span<const RunJob> jobs);

}  // namespace serial

namespace parallel {

DistanceMatrix pairwise_tdist(std::span<const TrashVector> vectors);
DistanceMatrix pairwise_gdist(const GenealogyGraph& graph, std::span<const NodeId> nodes);
/// Runs are fully isolated, so results match serial::run_batch exactly.
std::vector<EvolutionTrace> run_batch(std::span<const RunJob> jobs);

}  // namespace parallel

/// Number of OpenMP threads available to the parallel kernels.
int max_threads() noexcept;

}  // namespace gendiv
