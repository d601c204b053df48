#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "gendiv/genealogy.hpp"
#include "gendiv/individual.hpp"
#include "gendiv/rng.hpp"

namespace gendiv {

enum class MetricKind { none, domain, genealogical_tree, trash_bits };

std::string_view to_string(MetricKind kind);
/// Accepts none, domain, genealogical_tree (alias gdist) and trash_bits (alias tdist).
MetricKind parse_metric_kind(std::string_view text);

/// Pairwise distance between two individuals.
///
/// `domain` is unnormalized; every other kind returns values in [0, 1]. The
/// genealogical kind needs the run's graph and memoizes ancestry profiles,
/// so a metric instance must not be shared between threads.
class DiversityMetric {
 public:
  explicit DiversityMetric(MetricKind kind, const GenealogyGraph* graph = nullptr);

  MetricKind kind() const noexcept { return kind_; }
  double operator()(const Individual& a, const Individual& b);

  /// Drops cached ancestry for nodes outside `keep`.
  void retain(std::span<const NodeId> keep);

 private:
  MetricKind kind_;
  std::optional<AncestryCache> cache_;
};

struct DiversityConfig {
  double lambda = 0.0;
  std::size_t sample_size = 5;
  MetricKind metric = MetricKind::none;
};

/// Mean of metric(x, s) over `sample`. Throws InvalidParameter when empty.
double average_distance(const Individual& x, std::span<const Individual> sample,
                        DiversityMetric& metric);

/// raw_fitness + lambda * mean distance from `x` to a fresh sample of
/// distinct population members other than `x`. The sample is clamped to the
/// number of other members. With lambda == 0 or metric none no random numbers
/// are drawn and the raw value is returned.
double augmented_fitness(const Individual& x, std::span<const Individual> population,
                         double raw_fitness, const DiversityConfig& config, Rng& rng,
                         DiversityMetric& metric);

}  // namespace gendiv
