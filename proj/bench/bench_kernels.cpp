// Serial vs OpenMP timings for the batch kernels.
//
//   bench_kernels [vectors] [runs] [generations]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <vector>

#include "gendiv/kernels.hpp"

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool same) {
  std::cout << name << ": serial " << serial_ms << " ms, parallel " << parallel_ms << " ms, speedup "
            << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << (same ? "" : "  MISMATCH")
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t vectors = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
  const std::size_t runs = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 8;
  const std::size_t generations = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 200;
  std::cout << "threads: " << gendiv::max_threads() << '\n';

  gendiv::Rng rng(42);
  std::vector<gendiv::TrashVector> trash;
  for (std::size_t i = 0; i < vectors; ++i) trash.push_back(gendiv::random_trash(32, rng));
  gendiv::DistanceMatrix ts, tp;
  const double tdist_serial = time_ms([&] { ts = gendiv::serial::pairwise_tdist(trash); });
  const double tdist_parallel = time_ms([&] { tp = gendiv::parallel::pairwise_tdist(trash); });
  report("pairwise_tdist", tdist_serial, tdist_parallel, ts == tp);

  gendiv::EngineConfig config;
  config.generations = generations;
  config.diversity = {1.0, 5, gendiv::MetricKind::genealogical_tree};
  const auto run = gendiv::evolve(config, {}, 7);
  std::vector<gendiv::NodeId> nodes;
  const std::size_t stride = std::max<std::size_t>(1, run.graph.size() / 400);
  for (std::size_t i = 0; i < run.graph.size(); i += stride) nodes.push_back(gendiv::node_id(i));
  gendiv::DistanceMatrix gs, gp;
  const double gdist_serial = time_ms([&] { gs = gendiv::serial::pairwise_gdist(run.graph, nodes); });
  const double gdist_parallel = time_ms([&] { gp = gendiv::parallel::pairwise_gdist(run.graph, nodes); });
  report("pairwise_gdist", gdist_serial, gdist_parallel, gs == gp);

  std::vector<gendiv::RunJob> jobs;
  for (std::size_t s = 0; s < runs; ++s) {
    gendiv::RunJob job{config, {}, s + 1};
    job.config.diversity.metric = static_cast<gendiv::MetricKind>(s % 4);
    jobs.push_back(job);
  }
  std::vector<gendiv::EvolutionTrace> rs, rp;
  const double batch_serial = time_ms([&] { rs = gendiv::serial::run_batch(jobs); });
  const double batch_parallel = time_ms([&] { rp = gendiv::parallel::run_batch(jobs); });
  report("run_batch", batch_serial, batch_parallel, rs == rp);
  return 0;
}
