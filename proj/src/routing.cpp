#include "gendiv/routing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gendiv/errors.hpp"

namespace gendiv {

void Arena::validate() const {
  auto well_formed = [](const Rect& r) { return r.x_min <= r.x_max && r.y_min <= r.y_max; };
  if (!well_formed(bounds)) throw InvalidParameter("arena.bounds: min exceeds max");
  if (!well_formed(goal)) throw InvalidParameter("arena.goal: min exceeds max");
  if (!well_formed(obstacle)) throw InvalidParameter("arena.obstacle: min exceeds max");
  if (!bounds.contains(start)) throw InvalidParameter("arena.start: outside bounds");
  if (!bounds.contains(goal)) throw InvalidParameter("arena.goal: outside bounds");
  if (!bounds.contains(obstacle)) throw InvalidParameter("arena.obstacle: outside bounds");
  if (obstacle.contains(start)) throw InvalidParameter("arena.start: inside obstacle");
  if (goal.intersects(obstacle)) throw InvalidParameter("arena.goal: overlaps obstacle");
}

Vec2 clamp_action(Vec2 a, StepNorm norm) {
  if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
    throw InvalidParameter("action components must be finite");
  }
  const double size = norm == StepNorm::l1 ? std::abs(a.x) + std::abs(a.y)
                                           : std::max(std::abs(a.x), std::abs(a.y));
  if (size <= kMaxStep) return a;
  const double scale = kMaxStep / size;
  return {a.x * scale, a.y * scale};
}

bool segment_hits_rect(Vec2 p, Vec2 q, const Rect& r) noexcept {
  // Liang-Barsky clipping of the parametric segment p + t (q - p), t in [0, 1].
  double t0 = 0.0;
  double t1 = 1.0;
  const double d[2] = {q.x - p.x, q.y - p.y};
  const double lo[2] = {r.x_min - p.x, r.y_min - p.y};
  const double hi[2] = {r.x_max - p.x, r.y_max - p.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (lo[axis] > 0.0 || hi[axis] < 0.0) return false;
      continue;
    }
    double ta = lo[axis] / d[axis];
    double tb = hi[axis] / d[axis];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

SimulationResult simulate(const ActionSequence& genome, const Arena& arena) {
  SimulationResult result;
  Vec2 pos = arena.start;
  result.trajectory[0] = pos;
  for (std::size_t step = 0; step < kActionCount; ++step) {
    const Vec2 a = clamp_action(genome[step], arena.step_norm);
    const Vec2 next{pos.x + a.x, pos.y + a.y};
    // Bounds are convex, so the segment stays inside iff its endpoint does.
    if (arena.bounds.contains(next) && !segment_hits_rect(pos, next, arena.obstacle)) pos = next;
    result.trajectory[step + 1] = pos;
    if (arena.goal.contains(pos)) ++result.raw_fitness;
  }
  return result;
}

double domain_distance(const ActionSequence& a, const ActionSequence& b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < kActionCount; ++i) {
    sum += std::abs(a[i].x - b[i].x) + std::abs(a[i].y - b[i].y);
  }
  return sum;
}

ActionSequence random_genome(Rng& rng) {
  std::uniform_real_distribution<double> component(-kMaxStep, kMaxStep);
  ActionSequence g;
  for (auto& action : g) {
    action.x = component(rng);
    action.y = component(rng);
  }
  return g;
}

ActionSequence mutate_genome(const ActionSequence& g, double sigma, Rng& rng) {
  if (!(sigma > 0.0)) throw InvalidParameter("mutation sigma must be > 0");
  ActionSequence out = g;
  const std::size_t slot = uniform_index(kActionCount, rng);
  std::normal_distribution<double> noise(0.0, sigma);
  out[slot].x += noise(rng);
  out[slot].y += noise(rng);
  return out;
}

ActionSequence crossover_genome(const ActionSequence& a, const ActionSequence& b, Rng& rng) {
  ActionSequence out;
  const std::uint64_t mask = rng();
  for (std::size_t i = 0; i < kActionCount; ++i) out[i] = ((mask >> i) & 1U) ? a[i] : b[i];
  return out;
}

}  // namespace gendiv
