#include <algorithm>
#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>

#include "fenceforge/config.hpp"
#include "fenceforge/errors.hpp"
#include "fenceforge/offset.hpp"
#include "fenceforge/scene.hpp"
#include "test_scenes.hpp"

namespace fenceforge {
namespace {

using testing::circle_chain;
using testing::make_scene;
using testing::params;

std::vector<std::string> failed(const ValidationReport& rep) {
  std::vector<std::string> out;
  for (const CheckResult& c : rep.checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

TEST(Validate, UnitDiscPassesEverything) {
  const Scene s = make_scene({Obstacle::loop(circle_chain({0, 0}, 1.0), Material::Interior)},
                             params(2.0, 0.5, 1.0, 1.0), {5, 0}, kPi / 2);
  const ValidationReport rep = validate(s);
  EXPECT_TRUE(rep.ok()) << ::testing::PrintToString(failed(rep));
  ASSERT_NE(rep.find("not_bizarre_d0"), nullptr);
  EXPECT_TRUE(rep.find("not_bizarre_d0")->passed);
}

TEST(Validate, PointPairBridgeMakesFenceDistanceBizarre) {
  // Points 6 apart: the bridge between them has length 6 = 2 (d0 + R).
  const Scene s = make_scene({Obstacle::at({-3, 0}), Obstacle::at({3, 0})}, params(1.5, 0.5, 1.0, 1.5), {0, 5},
                             0.0);
  const ValidationReport rep = validate(s);
  EXPECT_EQ(failed(rep), std::vector<std::string>{"not_bizarre_d0_plus_r"});
  EXPECT_NE(rep.find("not_bizarre_d0_plus_r")->detail.find("case III"), std::string::npos)
      << rep.find("not_bizarre_d0_plus_r")->detail;
}

TEST(Validate, OperatingRadiusAtTurningRadiusIsRejected) {
  const Scene s = make_scene({Obstacle::loop(circle_chain({0, 0}, 1.0), Material::Interior)},
                             params(2.0, 0.5, 0.5, 1.0), {5, 0}, 0.0);
  EXPECT_EQ(failed(validate(s)), std::vector<std::string>{"r_op_interval"});
}

TEST(Validate, EachMutationFailsExactlyItsCheck) {
  const Scene base = make_scene({Obstacle::loop(circle_chain({0, 0}, 1.0), Material::Interior), Obstacle::at({5, 0})},
                                params(1.0, 0.4, 0.5, 0.7), {0, 4}, 0.0);
  ASSERT_TRUE(validate(base).ok()) << ::testing::PrintToString(failed(validate(base)));

  Scene fence_small = base;
  fence_small.params.r_fence = 0.45;
  EXPECT_EQ(failed(validate(fence_small)), std::vector<std::string>{"fence_radius"});

  Scene overlap = base;
  overlap.obstacles.push_back(Obstacle::loop(circle_chain({1.5, 0}, 1.0), Material::Interior));
  const ValidationReport overlap_rep = validate(overlap);
  EXPECT_EQ(failed(overlap_rep).front(), "disjoint");
  // Bizarre distances cannot be certified on a broken scene, so those checks
  // fail as skipped rather than pass vacuously.
  EXPECT_EQ(overlap_rep.find("not_bizarre_d0")->detail, "skipped: scene structurally invalid");

  Scene two_rooms = base;
  two_rooms.obstacles.push_back(Obstacle::loop(circle_chain({0, 0}, 40.0), Material::Exterior));
  two_rooms.obstacles.push_back(Obstacle::loop(circle_chain({0, 0}, 50.0), Material::Exterior));
  EXPECT_EQ(failed(validate(two_rooms)).front(), "single_exterior");

  Scene nan_robot = base;
  nan_robot.theta_in = NAN;
  EXPECT_EQ(failed(validate(nan_robot)), std::vector<std::string>{"robot_state"});

  Scene negative = base;
  negative.params.v = -1.0;
  EXPECT_EQ(failed(validate(negative)).front(), "positive_parameters");
}

TEST(Validate, IndependentOfObstacleOrder) {
  Scene a = make_scene({Obstacle::at({-3, 0}), Obstacle::loop(circle_chain({3, 0}, 1.0), Material::Interior),
                        Obstacle::at({0, 4})},
                       params(1.0, 0.4, 0.5, 0.9), {0, -4}, 0.0);
  Scene b = a;
  std::reverse(b.obstacles.begin(), b.obstacles.end());
  const ValidationReport ra = validate(a), rb = validate(b);
  ASSERT_EQ(ra.checks.size(), rb.checks.size());
  for (std::size_t i = 0; i < ra.checks.size(); ++i) {
    EXPECT_EQ(ra.checks[i].name, rb.checks[i].name);
    EXPECT_EQ(ra.checks[i].passed, rb.checks[i].passed);
  }
}

TEST(Obstacle, OrientationIsNormalizedOnLoad) {
  const Obstacle cw = Obstacle::loop(circle_chain({0, 0}, 1.0).reversed(), Material::Interior);
  EXPECT_GT(cw.boundary.signed_area(), 0.0);
  const Obstacle room = Obstacle::loop(circle_chain({0, 0}, 5.0), Material::Exterior);
  EXPECT_LT(room.boundary.signed_area(), 0.0);
  // The material keeps its place on the left either way.
  EXPECT_TRUE(cw.boundary.left_of({0.2, 0.0}));
  EXPECT_TRUE(room.boundary.left_of({7.0, 0.0}));
}

TEST(Clearance, FarRobotFailsTheDistanceMargin) {
  const Scene s = make_scene({Obstacle::at({0, 0})}, params(1.0, 0.5, 0.75, 10.0), {20, 0}, kPi / 2);
  const Perimeter P = extract_perimeter(s);
  const ClearanceResult c = check_initial_clearance(s, P);
  EXPECT_FALSE(c.ok);
  EXPECT_NEAR(c.dist_to_perimeter, 19.0, 1e-12);
  EXPECT_NE(c.reason.find("3 R_min"), std::string::npos) << c.reason;
}

TEST(Clearance, CloseRobotPassesAndMatchesClosedForm) {
  const Scene s = make_scene({Obstacle::at({0, 0})}, params(1.0, 0.5, 0.75, 10.0), {5, 0}, kPi / 2);
  const Perimeter P = extract_perimeter(s);
  const ClearanceResult c = check_initial_clearance(s, P);
  EXPECT_TRUE(c.ok) << c.reason;
  EXPECT_NEAR(c.dist_to_perimeter, 4.0, 1e-12);
  // Q(R) is the outside of the radius-11 circle, so dist(q, Q) = 11 - |q|.
  double worst = 0.0;
  for (double sgn : {1.0, -1.0}) {
    const Vec2 center{5.0, sgn * 0.5};
    for (int k = 0; k < 4096; ++k) {
      const Vec2 q = center + unit_from_angle(kTwoPi * k / 4096.0) * 0.5;
      worst = std::max(worst, 11.0 - norm(q));
    }
  }
  EXPECT_LT(worst, 10.0);
  EXPECT_NEAR(worst, 11.0 - (std::hypot(5.0, 0.5) - 0.5), 1e-6);
}

TEST(Clearance, RobotInsideNeighbourhoodIsRefused) {
  const Scene s = make_scene({Obstacle::at({0, 0})}, params(1.0, 0.5, 0.75, 3.0), {0.5, 0}, 0.0);
  const ClearanceResult c = check_initial_clearance(s, extract_perimeter(s));
  EXPECT_FALSE(c.ok);
  EXPECT_NE(c.reason.find("exterior"), std::string::npos) << c.reason;
}

TEST(Clearance, EmptyErosionIsReported) {
  // In a room of radius 4 the perimeter has radius 3, so R = 3.2 erodes it all.
  const Scene s = make_scene({Obstacle::loop(circle_chain({0, 0}, 4.0), Material::Exterior)},
                             params(1.0, 0.4, 0.5, 3.2), {0, 2.9}, 0.0);
  ASSERT_TRUE(validate(s).ok()) << ::testing::PrintToString(failed(validate(s)));
  const ClearanceResult c = check_initial_clearance(s, extract_perimeter(s));
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.reason, "Q(R) is empty");
}

TEST(SceneJson, ParsesAndRoundTrips) {
  const std::string text = R"({
    "params": {"d0": 1, "r_min": 0.4, "r_op": 0.5, "r_fence": 0.8},
    "robot": {"x": 3, "y": 0, "theta": 1.5},
    "obstacles": [
      {"type": "point", "x": 0, "y": 2},
      {"type": "loop", "material": "interior", "segments": [
        {"kind": "arc", "center": [0, -2], "radius": 1, "start_angle": 0, "sweep": 3.141592653589793},
        {"kind": "arc", "center": [0, -2], "radius": 1, "start_angle": 3.141592653589793, "sweep": 3.141592653589793}]}
    ]})";
  const Scene s = parse_scene(text);
  ASSERT_EQ(s.obstacles.size(), 2u);
  EXPECT_DOUBLE_EQ(s.params.v, 1.0);
  EXPECT_DOUBLE_EQ(s.params.r_fence, 0.8);
  const Scene again = parse_scene(scene_to_json(s));
  EXPECT_EQ(scene_to_json(again), scene_to_json(s));
  EXPECT_NEAR(again.obstacles[1].boundary.length(), kTwoPi, 1e-12);
}

TEST(SceneJson, RejectsUnknownKeysAndBadValues) {
  const std::string ok_params = R"("params": {"d0": 1, "r_min": 0.4, "r_op": 0.5, "r_fence": 0.8})";
  const std::string robot = R"("robot": {"x": 3, "y": 0, "theta": 0})";
  EXPECT_THROW(parse_scene("{" + ok_params + "," + robot + R"(, "obstacles": [], "extra": 1})"), SceneError);
  EXPECT_THROW(parse_scene("{" + ok_params + "," + robot + R"(, "obstacles": [{"type": "blob"}]})"), SceneError);
  EXPECT_THROW(parse_scene("{" + ok_params + "," + robot +
                           R"(, "obstacles": [{"type": "point", "x": 0, "y": 0, "z": 1}]})"),
               SceneError);
  EXPECT_THROW(parse_scene("{" + ok_params + "," + robot +
                           R"(, "obstacles": [{"type": "loop", "segments": [{"kind": "line", "a": [0,0], "b": [0,0]}]}]})"),
               SceneError);
  EXPECT_THROW(parse_scene("not json"), SceneError);
  EXPECT_THROW(parse_scene(R"({"params": {"d0": "one"}})"), SceneError);
}

TEST(SceneJson, CorpusScenesAreValid) {
  for (const std::string& name : testing::kCorpus) {
    const Scene s = testing::corpus_scene(name);
    EXPECT_TRUE(validate(s).ok()) << name << ": " << ::testing::PrintToString(failed(validate(s)));
  }
}

TEST(Config, ParsesKnownKeysOnly) {
  const Config c = parse_config(R"({"tol_rel": 1e-10, "dt": 0.01, "cell_budget": 1e6})");
  EXPECT_DOUBLE_EQ(c.tol_rel, 1e-10);
  EXPECT_DOUBLE_EQ(c.dt, 0.01);
  EXPECT_DOUBLE_EQ(c.cell_budget, 1e6);
  EXPECT_DOUBLE_EQ(c.oracle_pitch_divisor, 512.0);
  EXPECT_THROW(parse_config(R"({"tolerance": 1})"), std::exception);
}

TEST(Config, EnvironmentVariableOverridesDefaults) {
  const std::string path = ::testing::TempDir() + "/fenceforge_config.json";
  std::ofstream(path) << R"({"band_factor": 0.02})";
  setenv("FENCEFORGE_CONFIG", path.c_str(), 1);
  const Config c = load_config_from_env();
  unsetenv("FENCEFORGE_CONFIG");
  EXPECT_DOUBLE_EQ(c.band_factor, 0.02);
  EXPECT_DOUBLE_EQ(load_config_from_env().band_factor, 1e-2);
}

}  // namespace
}  // namespace fenceforge
