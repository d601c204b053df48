#include "gendiv/diversity.hpp"

#include <string>
#include <vector>

#include "gendiv/errors.hpp"

namespace gendiv {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::none: return "none";
    case MetricKind::domain: return "domain";
    case MetricKind::genealogical_tree: return "genealogical_tree";
    case MetricKind::trash_bits: return "trash_bits";
  }
  return "unknown";
}

MetricKind parse_metric_kind(std::string_view text) {
  if (text == "none") return MetricKind::none;
  if (text == "domain") return MetricKind::domain;
  if (text == "genealogical_tree" || text == "gdist") return MetricKind::genealogical_tree;
  if (text == "trash_bits" || text == "tdist") return MetricKind::trash_bits;
  throw InvalidParameter("unknown metric kind '" + std::string(text) + "'");
}

DiversityMetric::DiversityMetric(MetricKind kind, const GenealogyGraph* graph) : kind_(kind) {
  if (kind == MetricKind::genealogical_tree) {
    if (graph == nullptr) throw InvalidParameter("genealogical_tree metric needs a graph");
    cache_.emplace(*graph);
  }
}

double DiversityMetric::operator()(const Individual& a, const Individual& b) {
  switch (kind_) {
    case MetricKind::none: return 0.0;
    case MetricKind::domain: return domain_distance(a.genome, b.genome);
    case MetricKind::genealogical_tree: return cache_->gdist(a.node, b.node);
    case MetricKind::trash_bits: return tdist(a.trash, b.trash);
  }
  return 0.0;
}

void DiversityMetric::retain(std::span<const NodeId> keep) {
  if (cache_) cache_->retain(keep);
}

double average_distance(const Individual& x, std::span<const Individual> sample,
                        DiversityMetric& metric) {
  if (sample.empty()) throw InvalidParameter("diversity sample is empty");
  double sum = 0.0;
  for (const Individual& s : sample) sum += metric(x, s);
  return sum / static_cast<double>(sample.size());
}

double augmented_fitness(const Individual& x, std::span<const Individual> population,
                         double raw_fitness, const DiversityConfig& config, Rng& rng,
                         DiversityMetric& metric) {
  if (population.empty()) throw InvalidParameter("population is empty");
  if (config.sample_size == 0) throw InvalidParameter("diversity sample size must be >= 1");
  if (config.metric == MetricKind::none || config.lambda == 0.0) return raw_fitness;

  std::vector<std::size_t> others;
  others.reserve(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (population[i].node != x.node) others.push_back(i);
  }
  // Nobody to compare against: no diversity bonus.
  if (others.empty()) return raw_fitness;

  const auto picks = sample_distinct(others.size(), config.sample_size, rng);
  double sum = 0.0;
  for (std::size_t pick : picks) sum += metric(x, population[others[pick]]);
  return raw_fitness + config.lambda * sum / static_cast<double>(picks.size());
}

}  // namespace gendiv
