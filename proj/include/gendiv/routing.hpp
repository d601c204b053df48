#pragma once

#include <array>
#include <cstddef>

#include "gendiv/rng.hpp"

namespace gendiv {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Closed axis-aligned rectangle.
struct Rect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  bool contains(Vec2 p) const noexcept {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  bool contains(const Rect& r) const noexcept {
    return r.x_min >= x_min && r.x_max <= x_max && r.y_min >= y_min && r.y_max <= y_max;
  }
  bool intersects(const Rect& r) const noexcept {
    return x_min <= r.x_max && r.x_min <= x_max && y_min <= r.y_max && r.y_min <= y_max;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Which norm bounds a single step.
enum class StepNorm { l1, linf };

inline constexpr std::size_t kActionCount = 10;
inline constexpr double kMaxStep = 0.5;

using ActionSequence = std::array<Vec2, kActionCount>;

/// World geometry for the routing task. Defaults: a wall in the middle of the
/// unit square that has to be passed over the top to reach the goal.
struct Arena {
  Rect bounds{0.0, 0.0, 1.0, 1.0};
  Vec2 start{0.1, 0.5};
  Rect goal{0.75, 0.3, 0.95, 0.7};
  Rect obstacle{0.4, 0.0, 0.6, 0.8};
  StepNorm step_norm = StepNorm::l1;

  /// Throws InvalidParameter if the geometry is inconsistent.
  void validate() const;
  friend bool operator==(const Arena&, const Arena&) = default;
};

/// Problem definition handed to the evolution engine.
struct RoutingProblem {
  Arena arena;
  double mutation_sigma = 0.1;
};

struct SimulationResult {
  std::array<Vec2, kActionCount + 1> trajectory{};
  int raw_fitness = 0;
};

/// Scales `a` down so its step norm is at most 0.5. Throws InvalidParameter
/// on non-finite components.
Vec2 clamp_action(Vec2 a, StepNorm norm = StepNorm::l1);

/// True if the segment p -> q touches the closed rectangle `r`.
bool segment_hits_rect(Vec2 p, Vec2 q, const Rect& r) noexcept;

/// Runs the robot through all actions. A step that would leave the bounds
/// or touch the obstacle is rejected and the robot stays put. Every post-step
/// position inside the goal scores +1.
SimulationResult simulate(const ActionSequence& genome, const Arena& arena);

/// Sum over action slots of |dx1 - dx2| + |dy1 - dy2|.
double domain_distance(const ActionSequence& a, const ActionSequence& b) noexcept;

/// Every component uniform in [-0.5, 0.5].
ActionSequence random_genome(Rng& rng);

/// Perturbs both components of one uniformly chosen action by N(0, sigma^2).
ActionSequence mutate_genome(const ActionSequence& g, double sigma, Rng& rng);

/// Takes each whole action from `a` or `b` with probability 1/2.
ActionSequence crossover_genome(const ActionSequence& a, const ActionSequence& b, Rng& rng);

}  // namespace gendiv
