#include "gendiv/kernels.hpp"

#include <omp.h>

#include <cstddef>

namespace gendiv {
namespace {

std::vector<AncestryProfile> profiles_serial(const GenealogyGraph& graph,
                                             std::span<const NodeId> nodes) {
  std::vector<AncestryProfile> profiles;
  profiles.reserve(nodes.size());
  for (NodeId id : nodes) profiles.push_back(graph.ancestry(id));
  return profiles;
}

}  // namespace

namespace serial {

DistanceMatrix pairwise_tdist(std::span<const TrashVector> vectors) {
  const std::size_t n = vectors.size();
  DistanceMatrix m{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = tdist(vectors[i], vectors[j]);
      m.values[i * n + j] = d;
      m.values[j * n + i] = d;
    }
  }
  return m;
}

DistanceMatrix pairwise_gdist(const GenealogyGraph& graph, std::span<const NodeId> nodes) {
  const std::size_t n = nodes.size();
  const auto profiles = profiles_serial(graph, nodes);
  DistanceMatrix m{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = gdist(profiles[i], profiles[j]);
      m.values[i * n + j] = d;
      m.values[j * n + i] = d;
    }
  }
  return m;
}

std::vector<EvolutionTrace> run_batch(std::span<const RunJob> jobs) {
  std::vector<EvolutionTrace> traces;
  traces.reserve(jobs.size());
  for (const RunJob& job : jobs) traces.push_back(evolve(job.config, job.problem, job.seed).trace);
  return traces;
}

}  // namespace serial

namespace parallel {

DistanceMatrix pairwise_tdist(std::span<const TrashVector> vectors) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(vectors.size());
  DistanceMatrix m{vectors.size(), std::vector<double>(vectors.size() * vectors.size(), 0.0)};
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      if (i != j) m.values[i * n + j] = tdist(vectors[i], vectors[j]);
    }
  }
  return m;
}

DistanceMatrix pairwise_gdist(const GenealogyGraph& graph, std::span<const NodeId> nodes) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(nodes.size());
  std::vector<AncestryProfile> profiles(nodes.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) profiles[i] = graph.ancestry(nodes[i]);

  DistanceMatrix m{nodes.size(), std::vector<double>(nodes.size() * nodes.size(), 0.0)};
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = 0; j < n; ++j) {
      if (i != j) m.values[i * n + j] = gdist(profiles[i], profiles[j]);
    }
  }
  return m;
}

std::vector<EvolutionTrace> run_batch(std::span<const RunJob> jobs) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(jobs.size());
  std::vector<EvolutionTrace> traces(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    traces[i] = evolve(jobs[i].config, jobs[i].problem, jobs[i].seed).trace;
  }
  return traces;
}

}  // namespace parallel

int max_threads() noexcept { return omp_get_max_threads(); }

}  // namespace gendiv
