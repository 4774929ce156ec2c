#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fenceforge/scene.hpp"

namespace fenceforge::testing {

inline const std::vector<std::string> kCorpus = {"disc", "two_points", "rounded_square", "peanut", "u_cave"};

inline Scene corpus_scene(const std::string& name) {
  return load_scene(std::string(FENCEFORGE_SCENE_DIR) + "/" + name + ".json");
}

inline CurveChain circle_chain(Vec2 c, double r) {
  return CurveChain({Segment::arc(c, r, 0.0, kPi), Segment::arc(c, r, kPi, kPi)}, true);
}

inline CurveChain polygon(const std::vector<Vec2>& pts) {
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < pts.size(); ++i) segs.push_back(Segment::line(pts[i], pts[(i + 1) % pts.size()]));
  return CurveChain(std::move(segs), true);
}

inline Scene make_scene(std::vector<Obstacle> obstacles, SceneParams params, Vec2 r_in, double theta_in) {
  Scene s;
  s.obstacles = std::move(obstacles);
  s.params = params;
  s.r_in = r_in;
  s.theta_in = theta_in;
  return s;
}

inline SceneParams params(double d0, double r_min, double r_op, double r_fence) {
  SceneParams p;
  p.d0 = d0;
  p.r_min = r_min;
  p.r_op = r_op;
  p.r_fence = r_fence;
  return p;
}

// U-shaped block [-3,3]x[-2,2] with a slot of half-width w cut from the top
// down to y = -0.5.
inline Obstacle u_block(double w) {
  return Obstacle::loop(polygon({{-3, -2}, {3, -2}, {3, 2}, {w, 2}, {w, -0.5}, {-w, -0.5}, {-w, 2}, {-3, 2}}),
                        Material::Interior);
}

inline Vec2 rotate(Vec2 p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Rotates by `angle` about the origin, then translates by `shift`.
inline Scene rigid_motion(const Scene& scene, double angle, Vec2 shift) {
  auto move = [&](Vec2 p) { return rotate(p, angle) + shift; };
  Scene out = scene;
  out.obstacles.clear();
  for (const Obstacle& o : scene.obstacles) {
    if (o.kind == Obstacle::Kind::Point) {
      out.obstacles.push_back(Obstacle::at(move(o.point)));
      continue;
    }
    std::vector<Segment> segs;
    for (const Segment& g : o.boundary.segments()) {
      segs.push_back(g.is_line() ? Segment::line(move(g.a()), move(g.b()))
                                 : Segment::arc(move(g.center()), g.radius(), g.start_angle() + angle, g.sweep()));
    }
    out.obstacles.push_back(Obstacle::loop(CurveChain(std::move(segs), true), o.material));
  }
  out.r_in = move(scene.r_in);
  out.theta_in = scene.theta_in + angle;
  return out;
}

}  // namespace fenceforge::testing
