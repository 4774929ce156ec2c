#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fenceforge/geometry.hpp"
#include "fenceforge/offset.hpp"
#include "fenceforge/scene.hpp"

namespace fenceforge {

struct ProjectionSource {
  std::size_t index = 0;    // obstacle index, or 0 for a single chain
  std::size_t segment = 0;  // segment within the obstacle boundary or chain
};

struct DistanceResult {
  double distance = 0.0;
  std::vector<Vec2> projections;
  std::vector<ProjectionSource> sources;
  /// Set when every point of this arc is a projection.
  std::optional<Segment> degenerate_arc;
  bool inside = false;
};

DistanceResult dist_to_obstacles(const Scene& scene, Vec2 r);

/// Distance to the perimeter computed on the chain itself. Throws
/// AssumptionViolation if r is not in the exterior and ConsistencyFailure if
/// the value disagrees with dist(r, D) - d0.
DistanceResult dist_to_perimeter(const Scene& scene, const Perimeter& perimeter, Vec2 r);

struct ProjectionPair {
  Vec2 p;    // on D
  Vec2 rho;  // on P
};

/// Pairs Pr(r, D) with Pr(r, P) through p -> p + d0 N(r, p); throws
/// ConsistencyFailure unless the map is a bijection between the two
/// independently computed sets.
std::vector<ProjectionPair> project_correspondence(const Scene& scene, const Perimeter& perimeter,
                                                   Vec2 r);

/// Rate of change of dist(r(t), D) for velocity `velocity`. When several
/// projections give different rates, [lo, hi] brackets the one-sided values.
struct DistanceRate {
  double lo = 0.0;
  double hi = 0.0;
  bool unique() const { return lo == hi; }
  double value() const { return 0.5 * (lo + hi); }
};

DistanceRate distance_rate(const Scene& scene, Vec2 r, Vec2 velocity);

/// Deterministic uniform samples of the exterior, drawn from the perimeter's
/// bounding box padded by d0 (the box of the room for exterior obstacles).
std::vector<Vec2> sample_exterior(const Scene& scene, const Perimeter& perimeter, std::size_t count,
                                  std::uint64_t seed);

}  // namespace fenceforge
