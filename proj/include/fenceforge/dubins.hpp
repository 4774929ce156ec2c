#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fenceforge/geometry.hpp"
#include "fenceforge/offset.hpp"
#include "fenceforge/scene.hpp"

namespace fenceforge {

struct DubinsState {
  Vec2 r;
  double theta = 0.0;
  double t = 0.0;
};

/// Exact constant-control update of the unicycle with speed v. Throws
/// std::invalid_argument when |omega| > omega_max.
DubinsState step(const DubinsState& state, double omega, double dt, double v, double omega_max);

/// Shortest curvature-bounded path between two poses, one of the six
/// words LSL, RSR, LSR, RSL, RLR, LRL. Lengths are arc lengths.
struct DubinsPath {
  char word[3] = {'S', 'S', 'S'};
  double lengths[3] = {0.0, 0.0, 0.0};
  double radius = 1.0;

  double total() const { return lengths[0] + lengths[1] + lengths[2]; }
  /// Pose after travelling arc length s from `start`.
  DubinsState at(const DubinsState& start, double s) const;
  /// Heading change accumulated over [s0, s1].
  double heading_change(double s0, double s1) const;
};

std::optional<DubinsPath> shortest_dubins(const DubinsState& from, const DubinsState& to,
                                          double radius);

struct TrackingOptions {
  double dt = 0.0;         // 0: R_min / (50 v)
  double lookahead = 0.0;  // 0: 2 R_min
  double band = 0.0;       // 0: 1e-2 R_min
  double gain = 4.0;       // critical damping of the linearized error
  bool approach = true;    // plan a Dubins join before tracking
};

struct Trajectory {
  double v = 1.0;
  double omega_max = 0.0;
  double dt = 0.0;
  double band = 0.0;
  std::vector<DubinsState> states;
  std::vector<double> controls;     // controls[k] drives states[k] -> states[k+1]
  std::vector<double> cross_track;  // signed offset to the fence, per state
  std::vector<double> fence_s;      // fence coordinate of the projection, per state
  bool converged = false;
  std::size_t converged_index = 0;  // error stays in band from here on
  std::size_t approach_steps = 0;
  double loops_completed = 0.0;
  std::string diagnostic;
};

Trajectory track_fence(const Scene& scene, const CurveChain& fence, double horizon,
                       TrackingOptions options = {});

enum class WitnessFamily {
  /// c = r + R_op N(r, p), p the projection of r onto P.
  PerimeterNormal,
  /// c = r + R_op times the patch-side normal of the tracked fence.
  FenceNormal,
};

struct SecurityReport {
  bool ok = true;
  bool hard_failure = false;
  std::optional<std::size_t> first_violation;
  std::string reason;
  std::vector<Vec2> centers;
  std::vector<double> clearance;  // dist(c, P) - R_op per checked state
  double min_clearance = 0.0;
};

struct SecurityOptions {
  WitnessFamily family = WitnessFamily::PerimeterNormal;
  const CurveChain* fence = nullptr;  // required for FenceNormal
  std::size_t from = 0;
  double slack = -1.0;  // < 0: the tracking band
};

/// Checks the witness disc c(t) for every state from `options.from`: it
/// keeps clearance R_op from P inside the exterior, covers the robot, and
/// moves continuously (|dc| <= v dt (1 + R_op / R_min) + slack).
SecurityReport verify_secure(const Scene& scene, const Perimeter& perimeter,
                             const Trajectory& trajectory, SecurityOptions options = {});

}  // namespace fenceforge
