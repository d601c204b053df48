#include <vector>

#include "doctest.h"
#include "gendiv/diversity.hpp"
#include "gendiv/errors.hpp"

using namespace gendiv;

namespace {

Individual make(GenealogyGraph& g, TrashVector trash, ActionSequence genome = {}) {
  const NodeId id = g.record_birth({}, OpKind::genesis);
  return Individual{id, genome, std::move(trash), 0.0};
}

TrashVector ones(std::size_t tau) {
  TrashVector v(tau);
  for (std::size_t i = 0; i < tau; ++i) v.set(i, true);
  return v;
}

}  // namespace

TEST_CASE("metric kinds parse and print") {
  for (auto k : {MetricKind::none, MetricKind::domain, MetricKind::genealogical_tree, MetricKind::trash_bits}) {
    CHECK(parse_metric_kind(to_string(k)) == k);
  }
  CHECK(parse_metric_kind("gdist") == MetricKind::genealogical_tree);
  CHECK(parse_metric_kind("tdist") == MetricKind::trash_bits);
  CHECK_THROWS_AS(parse_metric_kind("hamming"), InvalidParameter);
  CHECK_THROWS_AS(DiversityMetric(MetricKind::genealogical_tree), InvalidParameter);
}

TEST_CASE("average_distance fixtures") {
  GenealogyGraph g;
  const auto x = make(g, TrashVector(32));
  const auto same = make(g, TrashVector(32));
  const auto opposite = make(g, ones(32));

  DiversityMetric trash(MetricKind::trash_bits);
  const std::vector<Individual> zero_sample{same, same};
  CHECK(average_distance(x, zero_sample, trash) == 0.0);
  const std::vector<Individual> one{opposite};
  CHECK(average_distance(x, one, trash) == 1.0);
  CHECK_THROWS_AS(average_distance(x, std::vector<Individual>{}, trash), InvalidParameter);

  DiversityMetric domain(MetricKind::domain);
  std::vector<Individual> sample;
  for (double d : {0.2, 0.4, 0.6}) {
    ActionSequence genome{};
    genome[0].x = d;
    sample.push_back(make(g, TrashVector(32), genome));
  }
  CHECK(average_distance(x, sample, domain) == doctest::Approx(0.4));

  DiversityMetric genealogical(MetricKind::genealogical_tree, &g);
  CHECK(average_distance(x, one, genealogical) == 1.0);
}

TEST_CASE("augmented_fitness fixtures") {
  GenealogyGraph g;
  Rng rng(31);
  std::vector<Individual> pop;
  for (int i = 0; i < 6; ++i) pop.push_back(make(g, random_trash(32, rng), random_genome(rng)));

  for (auto kind : {MetricKind::domain, MetricKind::genealogical_tree, MetricKind::trash_bits}) {
    DiversityMetric metric(kind, &g);
    Rng a(1), b(1);
    CHECK(augmented_fitness(pop[0], pop, 3.0, {0.0, 5, kind}, a, metric) == 3.0);
    // lambda == 0 draws nothing from the random source.
    CHECK(a() == b());
  }
  DiversityMetric none(MetricKind::none);
  CHECK(augmented_fitness(pop[0], pop, 3.0, {2.0, 5, MetricKind::none}, rng, none) == 3.0);

  // Two members with trash distance 0.25: the sample is forced to the other one.
  GenealogyGraph g2;
  TrashVector quarter(32);
  for (std::size_t i = 0; i < 8; ++i) quarter.set(i, true);
  const std::vector<Individual> pair{make(g2, TrashVector(32)), make(g2, quarter)};
  DiversityMetric trash(MetricKind::trash_bits);
  CHECK(augmented_fitness(pair[0], pair, 3.0, {2.0, 5, MetricKind::trash_bits}, rng, trash) == 3.5);

  const std::vector<Individual> alone{pair[0]};
  CHECK(augmented_fitness(pair[0], alone, 3.0, {2.0, 5, MetricKind::trash_bits}, rng, trash) == 3.0);
  CHECK_THROWS_AS(augmented_fitness(pair[0], std::vector<Individual>{}, 3.0, {}, rng, trash),
                  InvalidParameter);
}

TEST_CASE("augmented_fitness samples distinct members and never x itself") {
  GenealogyGraph g;
  Rng rng(32);
  std::vector<Individual> pop;
  // x has all-zero trash, everyone else all-ones: any self-sample would lower the mean.
  pop.push_back(make(g, TrashVector(16)));
  for (int i = 0; i < 7; ++i) pop.push_back(make(g, ones(16)));
  DiversityMetric trash(MetricKind::trash_bits);
  for (int t = 0; t < 200; ++t) {
    CHECK(augmented_fitness(pop[0], pop, 1.0, {1.0, 5, MetricKind::trash_bits}, rng, trash) == 2.0);
  }
}

TEST_CASE("augmented_fitness is monotone in raw fitness for a fixed sample") {
  GenealogyGraph g;
  Rng rng(33);
  std::vector<Individual> pop;
  for (int i = 0; i < 10; ++i) pop.push_back(make(g, random_trash(32, rng), random_genome(rng)));
  DiversityMetric metric(MetricKind::domain);
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t seed = rng();
    Rng a(seed), b(seed);
    const double lo = augmented_fitness(pop[1], pop, 2.0, {0.3, 5, MetricKind::domain}, a, metric);
    const double hi = augmented_fitness(pop[1], pop, 4.0, {0.3, 5, MetricKind::domain}, b, metric);
    CHECK(hi > lo);
    CHECK(hi - lo == doctest::Approx(2.0));
  }
}
