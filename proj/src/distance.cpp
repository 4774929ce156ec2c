#include "fenceforge/distance.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "fenceforge/errors.hpp"

namespace fenceforge {

DistanceResult dist_to_obstacles(const Scene& scene, Vec2 r) {
  const RegionDistance rd = distance_to_regions(scene.regions(), r, scene.tol());
  DistanceResult out;
  out.distance = rd.distance;
  out.inside = rd.inside;
  out.degenerate_arc = rd.degenerate_arc;
  for (const RegionFoot& f : rd.feet) {
    out.projections.push_back(f.point);
    out.sources.push_back({f.region, f.segment});
  }
  return out;
}

DistanceResult dist_to_perimeter(const Scene& scene, const Perimeter& perimeter, Vec2 r) {
  const double tol = scene.tol();
  if (!perimeter.in_exterior(r, tol))
    throw AssumptionViolation(fmt::format("({:.12g}, {:.12g}) is not in the exterior", r.x, r.y));
  const ChainProjection pr = perimeter.chain.project(r, tol);
  DistanceResult out;
  out.distance = pr.distance;
  out.degenerate_arc = pr.degenerate_arc;
  for (const ProjectionPoint& p : pr.points) {
    out.projections.push_back(p.point);
    out.sources.push_back({0, p.segment});
  }
  const double via_d = dist_to_obstacles(scene, r).distance - perimeter.d0;
  if (std::abs(via_d - out.distance) > tol) {
    throw ConsistencyFailure(fmt::format(
        "dist(r, P) = {:.15g} but dist(r, D) - d0 = {:.15g} at ({:.12g}, {:.12g})", out.distance, via_d, r.x,
        r.y));
  }
  return out;
}

std::vector<ProjectionPair> project_correspondence(const Scene& scene, const Perimeter& perimeter, Vec2 r) {
  const double tol = scene.tol();
  if (!perimeter.in_exterior(r, tol))
    throw AssumptionViolation(fmt::format("({:.12g}, {:.12g}) is not in the exterior", r.x, r.y));
  const DistanceResult on_d = dist_to_obstacles(scene, r);
  const ChainProjection on_p = perimeter.chain.project(r, tol);
  if (on_d.degenerate_arc || on_p.degenerate_arc) {
    if (!on_d.degenerate_arc || !on_p.degenerate_arc)
      throw ConsistencyFailure("only one projection set is a continuum");
    const Vec2 p = on_d.degenerate_arc->midpoint();
    return {{p, p + normalized(r - p) * perimeter.d0}};
  }
  const double match_tol = 10.0 * tol;
  std::vector<ProjectionPair> pairs;
  std::vector<bool> taken(on_p.points.size(), false);
  for (const Vec2& p : on_d.projections) {
    const Vec2 image = p + normalized(r - p) * perimeter.d0;
    std::size_t hit = on_p.points.size();
    for (std::size_t k = 0; k < on_p.points.size(); ++k) {
      if (distance(on_p.points[k].point, image) <= match_tol) {
        if (hit != on_p.points.size() || taken[k])
          throw ConsistencyFailure("projection correspondence is not injective");
        hit = k;
      }
    }
    if (hit == on_p.points.size()) {
      throw ConsistencyFailure(fmt::format("image ({:.12g}, {:.12g}) of a projection onto D is not a "
                                           "projection onto P",
                                           image.x, image.y));
    }
    taken[hit] = true;
    pairs.push_back({p, on_p.points[hit].point});
  }
  if (std::find(taken.begin(), taken.end(), false) != taken.end())
    throw ConsistencyFailure("a projection onto P has no preimage on D");
  return pairs;
}

DistanceRate distance_rate(const Scene& scene, Vec2 r, Vec2 velocity) {
  const DistanceResult d = dist_to_obstacles(scene, r);
  if (d.inside || d.distance <= scene.tol()) throw std::invalid_argument("distance rate queried inside D");
  std::vector<double> rates;
  for (const Vec2& p : d.projections) rates.push_back(dot(velocity, normalized(r - p)));
  if (d.degenerate_arc) {
    // r is the center: N ranges over the reversed arc directions.
    const Segment& arc = *d.degenerate_arc;
    rates.push_back(dot(velocity, normalized(r - arc.start())));
    rates.push_back(dot(velocity, normalized(r - arc.end())));
    if (norm(velocity) > 0.0) {
      for (double sgn : {1.0, -1.0}) {
        const double ang = angle_of(velocity * (-sgn));
        if (arc.arc_contains_angle(ang, 0.0)) rates.push_back(sgn * norm(velocity));
      }
    }
  }
  DistanceRate out;
  out.lo = *std::min_element(rates.begin(), rates.end());
  out.hi = *std::max_element(rates.begin(), rates.end());
  if (out.hi - out.lo <= 1e-9 * std::max(1.0, norm(velocity))) out.lo = out.hi = 0.5 * (out.lo + out.hi);
  return out;
}

std::vector<Vec2> sample_exterior(const Scene& scene, const Perimeter& perimeter, std::size_t count,
                                  std::uint64_t seed) {
  const BoundingBox box = perimeter.chain.bbox().padded(perimeter.d0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.lo.x, box.hi.x), uy(box.lo.y, box.hi.y);
  const double tol = scene.tol();
  std::vector<Vec2> out;
  out.reserve(count);
  while (out.size() < count) {
    const Vec2 r{ux(rng), uy(rng)};
    if (perimeter.in_exterior(r, tol) && perimeter.chain.distance_to(r) > tol) out.push_back(r);
  }
  return out;
}

}  // namespace fenceforge
