#include "fenceforge/scene.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "fenceforge/errors.hpp"
#include "fenceforge/io.hpp"
#include "fenceforge/offset.hpp"

namespace fenceforge {

Obstacle Obstacle::at(Vec2 p) {
  Obstacle o;
  o.kind = Kind::Point;
  o.point = p;
  return o;
}

Obstacle Obstacle::loop(CurveChain boundary, Material material) {
  const double area = boundary.signed_area();
  const bool want_ccw = material == Material::Interior;
  if ((area > 0.0) != want_ccw) boundary = boundary.reversed();
  Obstacle o;
  o.kind = Kind::Loop;
  o.boundary = CurveChain(boundary.segments(), true, MaterialSide::Left);
  o.material = material;
  o.point = o.boundary.point_at(0.0);
  return o;
}

Vec2 Obstacle::representative() const {
  return kind == Kind::Point ? point : boundary.point_at(0.5 * boundary[0].length());
}

RegionSet Scene::regions() const {
  RegionSet out;
  out.reserve(obstacles.size());
  for (const Obstacle& o : obstacles) {
    out.push_back(o.kind == Obstacle::Kind::Point ? Region::at_point(o.point)
                                                  : Region::left_of(o.boundary));
  }
  return out;
}

double Scene::diameter() const {
  BoundingBox box = bbox_of(regions());
  if (box.empty()) box.expand(r_in);
  const double d = box.padded(params.d0 + params.r_fence).diagonal();
  return d > 0.0 ? d : 1.0;
}

double Scene::tol() const { return config.tol_rel * diameter(); }

bool ValidationReport::ok() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

std::string pt(Vec2 p) { return fmt::format("({:.6g}, {:.6g})", p.x, p.y); }

// Empty string when the two obstacles are disjoint, otherwise a witness.
std::string overlap_witness(const Obstacle& a, const Obstacle& b, double tol) {
  using K = Obstacle::Kind;
  if (a.kind == K::Point && b.kind == K::Point) {
    if (distance(a.point, b.point) <= tol) return "coincident points at " + pt(a.point);
    return {};
  }
  if (a.kind == K::Point || b.kind == K::Point) {
    const Obstacle& p = a.kind == K::Point ? a : b;
    const Obstacle& l = a.kind == K::Point ? b : a;
    if (l.boundary.distance_to(p.point) <= tol) return "point " + pt(p.point) + " on a boundary";
    if (l.boundary.left_of(p.point)) return "point " + pt(p.point) + " inside an obstacle";
    return {};
  }
  for (const Segment& s : a.boundary.segments()) {
    for (const Segment& t : b.boundary.segments()) {
      const IntersectionSet hit = intersect(s, t, tol);
      if (!hit.overlaps.empty()) return "boundaries overlap near " + pt(hit.overlaps[0].start());
      if (!hit.points.empty()) return "boundaries intersect at " + pt(hit.points[0]);
    }
  }
  if (b.boundary.left_of(a.representative())) return "one obstacle contains the other";
  if (a.boundary.left_of(b.representative())) return "one obstacle contains the other";
  return {};
}

}  // namespace

ValidationReport validate(const Scene& scene) {
  ValidationReport rep;
  const double tol = scene.tol();
  const SceneParams& p = scene.params;

  CheckResult chains{"obstacle_chains", true, ""};
  int exterior = 0;
  for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
    const Obstacle& o = scene.obstacles[i];
    if (o.kind == Obstacle::Kind::Point) {
      if (!is_finite(o.point)) {
        chains.passed = false;
        chains.detail += fmt::format("obstacle {}: non-finite point; ", i);
      }
      continue;
    }
    if (o.material == Material::Exterior) ++exterior;
    if (!o.boundary.closed()) {
      chains.passed = false;
      chains.detail += fmt::format("obstacle {}: boundary not closed; ", i);
    }
    for (const std::string& issue : o.boundary.validate(tol, tol)) {
      chains.passed = false;
      chains.detail += fmt::format("obstacle {}: {}; ", i, issue);
    }
  }
  rep.checks.push_back(chains);

  rep.checks.push_back({"single_exterior", exterior <= 1,
                        exterior <= 1 ? "" : fmt::format("{} exterior obstacles", exterior)});

  CheckResult disjoint{"disjoint", true, ""};
  if (chains.passed) {
    for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
      for (std::size_t j = i + 1; j < scene.obstacles.size(); ++j) {
        const std::string w = overlap_witness(scene.obstacles[i], scene.obstacles[j], tol);
        if (!w.empty()) {
          disjoint.passed = false;
          disjoint.detail += fmt::format("obstacles {} and {}: {}; ", i, j, w);
        }
      }
    }
  } else {
    disjoint.passed = false;
    disjoint.detail = "skipped: invalid obstacle chains";
  }
  rep.checks.push_back(disjoint);

  const bool positive = p.d0 > 0.0 && p.r_min > 0.0 && p.r_op > 0.0 && p.r_fence > 0.0 && p.v > 0.0;
  rep.checks.push_back({"positive_parameters", positive,
                        positive ? "" : "d0, r_min, r_op, r_fence and v must be positive"});
  const bool interval = p.r_min < p.r_op && p.r_op < p.d0;
  rep.checks.push_back(
      {"r_op_interval", interval,
       interval ? "" : fmt::format("need r_min < r_op < d0, got r_min={:.12g} r_op={:.12g} d0={:.12g}",
                                   p.r_min, p.r_op, p.d0)});
  const bool fence_ok = p.r_fence >= p.r_op;
  rep.checks.push_back(
      {"fence_radius", fence_ok,
       fence_ok ? "" : fmt::format("need R >= r_op, got R={:.12g} r_op={:.12g}", p.r_fence, p.r_op)});
  const bool robot_ok = is_finite(scene.r_in) && std::isfinite(scene.theta_in);
  rep.checks.push_back({"robot_state", robot_ok, robot_ok ? "" : "non-finite robot state"});

  const struct {
    const char* name;
    double value;
  } distances[] = {{"not_bizarre_d0", p.d0},
                   {"not_bizarre_d0_plus_r_op", p.d0 + p.r_op},
                   {"not_bizarre_d0_plus_r", p.d0 + p.r_fence}};
  const bool can_enumerate = chains.passed && disjoint.passed && positive;
  std::vector<BizarreCandidate> enumeration;
  if (can_enumerate) enumeration = enumerate_bizarre(scene.regions(), tol);
  for (const auto& d : distances) {
    CheckResult c{d.name, true, ""};
    if (!can_enumerate) {
      c.passed = false;
      c.detail = "skipped: scene structurally invalid";
    } else {
      const BizarreVerdict v = is_bizarre(enumeration, d.value, tol);
      if (!v.ok()) {
        c.passed = false;
        const BizarreCandidate& m = v.matches.front();
        c.detail = fmt::format("{:.12g} is bizarre (case {}: {})", d.value, case_name(m.which),
                               m.label);
      }
    }
    rep.checks.push_back(c);
  }
  return rep;
}

// ------------------------------------------------------------------- JSON

namespace {

using nlohmann::json;

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  std::initializer_list<const char*> required, const std::string& where) {
  if (!j.is_object()) throw SceneError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) known = true;
    if (!known) throw SceneError("unknown key '" + key + "' in " + where);
  }
  for (const char* r : required)
    if (!j.contains(r)) throw SceneError("missing key '" + std::string(r) + "' in " + where);
}

double number(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw SceneError(std::string("'") + key + "' in " + where + " must be a number");
  return v.get<double>();
}

}  // namespace

Scene parse_scene(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SceneError(std::string("invalid JSON: ") + e.what());
  }
  require_keys(root, {"params", "robot", "obstacles"}, {"params", "robot", "obstacles"}, "scene");
  Scene scene;
  const json& params = root["params"];
  require_keys(params, {"d0", "r_min", "r_op", "r_fence", "v"}, {"d0", "r_min", "r_op", "r_fence"},
               "params");
  scene.params.d0 = number(params, "d0", "params");
  scene.params.r_min = number(params, "r_min", "params");
  scene.params.r_op = number(params, "r_op", "params");
  scene.params.r_fence = number(params, "r_fence", "params");
  if (params.contains("v")) scene.params.v = number(params, "v", "params");

  const json& robot = root["robot"];
  require_keys(robot, {"x", "y", "theta"}, {"x", "y", "theta"}, "robot");
  scene.r_in = {number(robot, "x", "robot"), number(robot, "y", "robot")};
  scene.theta_in = number(robot, "theta", "robot");

  const json& obstacles = root["obstacles"];
  if (!obstacles.is_array()) throw SceneError("obstacles must be an array");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const json& o = obstacles[i];
    const std::string where = fmt::format("obstacles[{}]", i);
    if (!o.is_object() || !o.contains("type") || !o["type"].is_string())
      throw SceneError(where + " needs a string 'type'");
    const std::string type = o["type"].get<std::string>();
    if (type == "point") {
      require_keys(o, {"type", "x", "y"}, {"x", "y"}, where);
      scene.obstacles.push_back(Obstacle::at({number(o, "x", where), number(o, "y", where)}));
    } else if (type == "loop") {
      require_keys(o, {"type", "material", "segments"}, {"segments"}, where);
      Material material = Material::Interior;
      if (o.contains("material")) {
        const std::string m = o["material"].is_string() ? o["material"].get<std::string>() : "";
        if (m == "interior") {
          material = Material::Interior;
        } else if (m == "exterior") {
          material = Material::Exterior;
        } else {
          throw SceneError(where + ": material must be 'interior' or 'exterior'");
        }
      }
      const json& segs = o["segments"];
      if (!segs.is_array() || segs.empty()) throw SceneError(where + ": segments must be a nonempty array");
      std::vector<Segment> segments;
      for (std::size_t k = 0; k < segs.size(); ++k) {
        try {
          segments.push_back(segment_from_json(segs[k]));
        } catch (const GeometryError& e) {
          throw SceneError(fmt::format("{}.segments[{}]: {}", where, k, e.what()));
        }
      }
      scene.obstacles.push_back(Obstacle::loop(CurveChain(std::move(segments), true), material));
    } else {
      throw SceneError(where + ": unknown obstacle type '" + type + "'");
    }
  }
  scene.config = load_config_from_env();
  return scene;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot read scene file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

std::string scene_to_json(const Scene& scene) {
  json root;
  root["params"] = {{"d0", scene.params.d0},
                    {"r_min", scene.params.r_min},
                    {"r_op", scene.params.r_op},
                    {"r_fence", scene.params.r_fence},
                    {"v", scene.params.v}};
  root["robot"] = {{"x", scene.r_in.x}, {"y", scene.r_in.y}, {"theta", scene.theta_in}};
  json obs = json::array();
  for (const Obstacle& o : scene.obstacles) {
    if (o.kind == Obstacle::Kind::Point) {
      obs.push_back({{"type", "point"}, {"x", o.point.x}, {"y", o.point.y}});
    } else {
      obs.push_back({{"type", "loop"},
                     {"material", o.material == Material::Interior ? "interior" : "exterior"},
                     {"segments", chain_to_json(o.boundary)}});
    }
  }
  root["obstacles"] = obs;
  return dump_json(root);
}

}  // namespace fenceforge
