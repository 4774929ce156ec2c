#include <fmt/format.h>

#include "fenceforge/errors.hpp"
#include "fenceforge/fence.hpp"
#include "fenceforge/scene.hpp"

namespace fenceforge {

namespace {

constexpr int kCircleSamples = 1024;

}  // namespace

ClearanceResult check_initial_clearance(const Scene& scene, const Perimeter& perimeter) {
  ClearanceResult res;
  const double tol = scene.tol();
  const double R = scene.params.r_fence;
  const double r_min = scene.params.r_min;
  if (!perimeter.in_exterior(scene.r_in, tol)) {
    res.reason = "r_in is not in the exterior";
    return res;
  }
  res.dist_to_perimeter = perimeter.chain.distance_to(scene.r_in);
  if (!(R > res.dist_to_perimeter + 3.0 * r_min)) {
    res.reason = fmt::format("R = {:.12g} does not exceed dist(r_in, P) + 3 R_min = {:.12g}", R,
                             res.dist_to_perimeter + 3.0 * r_min);
    return res;
  }
  ErosionSet erosion;
  try {
    erosion = compute_erosion(scene, perimeter, R);
  } catch (const EmptyErosion&) {
    res.reason = "Q(R) is empty";
    return res;
  }
  const Vec2 side{-std::sin(scene.theta_in), std::cos(scene.theta_in)};
  const Vec2 centers[2] = {scene.r_in + side * r_min, scene.r_in - side * r_min};
  for (std::size_t k = 0; k < erosion.components.size(); ++k) {
    double worst = 0.0;
    for (const Vec2& c : centers) {
      for (int i = 0; i < kCircleSamples; ++i) {
        const Vec2 q = c + unit_from_angle(kTwoPi * i / kCircleSamples) * r_min;
        worst = std::max(worst, erosion.distance_to_component(k, q));
      }
    }
    if (worst < R) {
      res.ok = true;
      res.component = k;
      return res;
    }
  }
  res.reason = "the initial turning circles are not within R of a single component of Q(R)";
  return res;
}

}  // namespace fenceforge
