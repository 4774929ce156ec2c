#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fenceforge/config.hpp"
#include "fenceforge/geometry.hpp"

namespace fenceforge {

enum class Material { Interior, Exterior };

struct Obstacle {
  enum class Kind { Point, Loop };
  Kind kind = Kind::Point;
  Vec2 point;
  /// Oriented so the material is on the left: counterclockwise for interior
  /// material, clockwise for exterior material.
  CurveChain boundary;
  Material material = Material::Interior;

  static Obstacle at(Vec2 p);
  /// Normalizes the orientation of `boundary` to keep the material on the left.
  static Obstacle loop(CurveChain boundary, Material material);
  /// Some point of the obstacle's closed set.
  Vec2 representative() const;
};

struct SceneParams {
  double d0 = 1.0;
  double r_min = 0.4;
  double r_op = 0.5;
  double r_fence = 0.5;  // the fence radius R
  double v = 1.0;
};

struct Scene {
  std::vector<Obstacle> obstacles;
  SceneParams params;
  Vec2 r_in;
  double theta_in = 0.0;
  Config config;

  /// Obstacles as solid regions, in obstacle order.
  RegionSet regions() const;
  /// Diagonal of the obstacle bounding box padded by d0 + R.
  double diameter() const;
  /// Coincidence tolerance: tol_rel * diameter.
  double tol() const;
  double omega_max() const { return params.v / params.r_min; }
};

/// One named assumption check with its outcome and a human-readable witness.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool ok() const;
  const CheckResult* find(const std::string& name) const;
};

/// Checks the structural and parametric scene assumptions: valid obstacle
/// chains, at most one exterior obstacle, pairwise disjoint obstacles,
/// R_min < R_op < d0, R >= R_op, and that d0, d0 + R_op, d0 + R are not
/// bizarre.
ValidationReport validate(const Scene& scene);

struct Perimeter;

struct ClearanceResult {
  bool ok = false;
  std::string reason;
  /// Index of the erosion component both initial circles stay close to.
  std::optional<std::size_t> component;
  double dist_to_perimeter = 0.0;
};

/// Verifies r_in is in the exterior, R > dist(r_in, P) + 3 R_min, and that
/// both initial turning circles lie within distance < R of a single
/// connected component of Q(R).
ClearanceResult check_initial_clearance(const Scene& scene, const Perimeter& perimeter);

// JSON scene files.
Scene parse_scene(const std::string& json_text);
Scene load_scene(const std::string& path);
std::string scene_to_json(const Scene& scene);

}  // namespace fenceforge
