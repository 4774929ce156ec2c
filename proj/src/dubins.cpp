#include "fenceforge/dubins.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace fenceforge {

namespace {

double mod2pi(double a) { return wrap_positive(a); }

DubinsState advance(const DubinsState& s, double omega, double dt, double v) {
  DubinsState out;
  const double turn = omega * dt;
  if (std::abs(turn) < 1e-9) {
    out.r = s.r + unit_from_angle(s.theta + 0.5 * turn) * (v * dt);
  } else {
    const double k = v / omega;
    out.r = s.r + Vec2{k * (std::sin(s.theta + turn) - std::sin(s.theta)),
                       k * (std::cos(s.theta) - std::cos(s.theta + turn))};
  }
  out.theta = wrap_angle(s.theta + turn);
  out.t = s.t + dt;
  return out;
}

double word_curvature(char c, double radius) {
  if (c == 'L') return 1.0 / radius;
  if (c == 'R') return -1.0 / radius;
  return 0.0;
}

// Integral of the curvature of a closed chain over [s0, s1], s1 - s0 < length.
double curvature_integral(const CurveChain& chain, double s0, double s1) {
  const double len = chain.length();
  const double base = std::floor(s0 / len) * len;
  double total = 0.0;
  for (int lap = 0; lap < 2; ++lap) {
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const double a = base + lap * len + chain.segment_offset(i);
      const double lo = std::max(a, s0), hi = std::min(a + chain[i].length(), s1);
      if (hi > lo) total += chain[i].curvature() * (hi - lo);
    }
  }
  return total;
}

struct Projection {
  double s = 0.0;
  Vec2 point;
  double dist = std::numeric_limits<double>::infinity();
};

Projection project_global(const CurveChain& chain, Vec2 r) {
  Projection best;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Segment::Foot f = chain[i].closest_point(r);
    if (f.dist < best.dist) best = {chain.segment_offset(i) + f.s, f.point, f.dist};
  }
  return best;
}

// Closest point within [s_prev - w, s_prev + w] of a closed chain.
Projection project_local(const CurveChain& chain, Vec2 r, double s_prev, double w) {
  const double len = chain.length();
  if (2.0 * w >= len) return project_global(chain, r);
  const CurveChain window = chain.sub_chain(s_prev - w, s_prev + w);
  Projection best;
  for (std::size_t i = 0; i < window.size(); ++i) {
    const Segment::Foot f = window[i].closest_point(r);
    if (f.dist < best.dist) best = {window.segment_offset(i) + f.s, f.point, f.dist};
  }
  best.s = wrap_positive((s_prev - w + best.s) / len * kTwoPi) / kTwoPi * len;
  return best;
}

double wrapped_delta(double ds, double len) {
  ds = std::fmod(ds, len);
  if (ds > 0.5 * len) ds -= len;
  if (ds <= -0.5 * len) ds += len;
  return ds;
}

}  // namespace

DubinsState step(const DubinsState& state, double omega, double dt, double v, double omega_max) {
  if (std::abs(omega) > omega_max + 1e-12)
    throw std::invalid_argument(fmt::format("|omega| = {:.12g} exceeds the bound {:.12g}", std::abs(omega), omega_max));
  return advance(state, omega, dt, v);
}

DubinsState DubinsPath::at(const DubinsState& start, double s) const {
  DubinsState cur = start;
  for (int k = 0; k < 3 && s > 0.0; ++k) {
    const double take = std::min(s, lengths[k]);
    cur = advance(cur, word_curvature(word[k], radius), take, 1.0);
    s -= take;
  }
  return cur;
}

double DubinsPath::heading_change(double s0, double s1) const {
  double total = 0.0;
  double a = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double b = a + lengths[k];
    const double lo = std::max(a, s0), hi = std::min(b, s1);
    if (hi > lo) total += word_curvature(word[k], radius) * (hi - lo);
    a = b;
  }
  return total;
}

std::optional<DubinsPath> shortest_dubins(const DubinsState& from, const DubinsState& to, double radius) {
  const Vec2 delta = to.r - from.r;
  const double d = norm(delta) / radius;
  const double phi = angle_of(delta);
  const double a = mod2pi(from.theta - phi);
  const double b = mod2pi(to.theta - phi);
  const double sa = std::sin(a), sb = std::sin(b), ca = std::cos(a), cb = std::cos(b);
  const double cab = std::cos(a - b);

  struct Candidate {
    const char* word;
    double t, p, q;
    bool ok;
  };
  std::vector<Candidate> cands;
  {
    const double p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sa - sb);
    if (p2 >= 0.0) {
      const double tmp = std::atan2(cb - ca, d + sa - sb);
      cands.push_back({"LSL", mod2pi(-a + tmp), std::sqrt(p2), mod2pi(b - tmp), true});
    }
  }
  {
    const double p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sb - sa);
    if (p2 >= 0.0) {
      const double tmp = std::atan2(ca - cb, d - sa + sb);
      cands.push_back({"RSR", mod2pi(a - tmp), std::sqrt(p2), mod2pi(-b + tmp), true});
    }
  }
  {
    const double p2 = -2.0 + d * d + 2.0 * cab + 2.0 * d * (sa + sb);
    if (p2 >= 0.0) {
      const double p = std::sqrt(p2);
      const double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
      cands.push_back({"LSR", mod2pi(-a + tmp), p, mod2pi(-b + tmp), true});
    }
  }
  {
    const double p2 = -2.0 + d * d + 2.0 * cab - 2.0 * d * (sa + sb);
    if (p2 >= 0.0) {
      const double p = std::sqrt(p2);
      const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
      cands.push_back({"RSL", mod2pi(a - tmp), p, mod2pi(b - tmp), true});
    }
  }
  {
    const double tmp = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sa - sb)) / 8.0;
    if (std::abs(tmp) <= 1.0) {
      const double p = mod2pi(kTwoPi - std::acos(tmp));
      const double t = mod2pi(a - std::atan2(ca - cb, d - sa + sb) + 0.5 * p);
      cands.push_back({"RLR", t, p, mod2pi(a - b - t + p), true});
    }
  }
  {
    const double tmp = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sb - sa)) / 8.0;
    if (std::abs(tmp) <= 1.0) {
      const double p = mod2pi(kTwoPi - std::acos(tmp));
      const double t = mod2pi(-a - std::atan2(ca - cb, d + sa - sb) + 0.5 * p);
      cands.push_back({"LRL", t, p, mod2pi(b - a - t + p), true});
    }
  }

  std::optional<DubinsPath> best;
  const double match = 1e-6 * std::max(1.0, norm(delta) + radius);
  for (const Candidate& c : cands) {
    DubinsPath path;
    for (int k = 0; k < 3; ++k) path.word[k] = c.word[k];
    path.radius = radius;
    // The middle straight of CSC words has normalized length p; arcs t, q are angles.
    path.lengths[0] = c.t * radius;
    path.lengths[1] = c.p * radius;
    path.lengths[2] = c.q * radius;
    // Guard against branch mistakes: the path must land on the target pose.
    const DubinsState end = path.at(from, path.total());
    if (distance(end.r, to.r) > match || std::abs(wrap_angle(end.theta - to.theta)) > 1e-6) continue;
    if (!best || path.total() < best->total()) best = path;
  }
  return best;
}

Trajectory track_fence(const Scene& scene, const CurveChain& fence, double horizon, TrackingOptions opt) {
  const double v = scene.params.v;
  const double r_min = scene.params.r_min;
  Trajectory tr;
  tr.v = v;
  tr.omega_max = v / r_min;
  tr.dt = opt.dt > 0.0 ? opt.dt : (scene.config.dt > 0.0 ? scene.config.dt : r_min / (50.0 * v));
  const double look = opt.lookahead > 0.0 ? opt.lookahead : scene.config.lookahead_factor * r_min;
  tr.band = opt.band > 0.0 ? opt.band : scene.config.band_factor * r_min;
  const double dt = tr.dt;
  const double len = fence.length();
  const RegionSet regions = scene.regions();

  DubinsState state{scene.r_in, wrap_angle(scene.theta_in), 0.0};
  tr.states.push_back(state);

  auto fence_pose = [&](double s) {
    const JointFrames f = fence.frame_at(s);
    return DubinsState{fence.point_at(s), angle_of(f.after.tangent), 0.0};
  };

  // Approach: shortest safe Dubins join to a fence pose near the start.
  std::optional<DubinsPath> join;
  if (opt.approach) {
    const double s0 = project_global(fence, state.r).s;
    const double clearance = scene.params.d0 + 1e-9 * scene.diameter();
    for (int k = 0; k < 16; ++k) {
      const DubinsState target = fence_pose(s0 + k * 0.5 * look);
      const std::optional<DubinsPath> path = shortest_dubins(state, target, r_min);
      if (!path || (join && path->total() >= join->total())) continue;
      bool safe = true;
      for (double s = 0.0; s <= path->total() && safe; s += 0.1 * r_min)
        if (distance_value(regions, path->at(state, s).r) <= clearance) safe = false;
      if (safe) join = path;
    }
  }

  double s_fence = project_global(fence, state.r).s;
  auto record = [&](const DubinsState& st, double s_guess, bool local) {
    const Projection pr = local ? project_local(fence, st.r, s_guess, 4.0 * v * dt + look)
                                : project_global(fence, st.r);
    const JointFrames f = fence.frame_at(pr.s);
    tr.cross_track.push_back(dot(st.r - pr.point, f.after.normal));
    tr.fence_s.push_back(pr.s);
    return pr.s;
  };
  s_fence = record(state, s_fence, false);

  const auto max_steps = static_cast<std::size_t>(std::ceil(horizon / dt));
  if (join) {
    double s = 0.0;
    while (s < join->total() - 1e-12 && tr.controls.size() < max_steps) {
      const double ds = std::min(v * dt, join->total() - s);
      double omega = join->heading_change(s, s + ds) / dt;
      omega = std::clamp(omega, -tr.omega_max, tr.omega_max);
      state = step(state, omega, dt, v, tr.omega_max);
      s += v * dt;
      tr.controls.push_back(omega);
      tr.states.push_back(state);
      s_fence = record(state, s_fence, false);
    }
    tr.approach_steps = tr.controls.size();
  }

  // Pursuit tracking with curvature feed-forward.
  bool in_run = false;
  std::size_t run_start = 0;
  double run_s = 0.0;
  while (tr.controls.size() < max_steps) {
    const double e_y = tr.cross_track.back();
    const JointFrames f = fence.frame_at(s_fence);
    const double e_theta = wrap_angle(state.theta - angle_of(f.after.tangent));
    const double kappa = curvature_integral(fence, s_fence, s_fence + v * dt) / (v * dt);
    const double feed = v * kappa * std::cos(e_theta) / (1.0 - kappa * e_y);
    const double psi = -std::atan(e_y / look);
    const double fb = opt.gain * (v / look) * wrap_angle(psi - e_theta);
    const double omega = std::clamp(feed + fb, -tr.omega_max, tr.omega_max);
    state = step(state, omega, dt, v, tr.omega_max);
    tr.controls.push_back(omega);
    tr.states.push_back(state);
    const double prev_s = s_fence;
    const bool far = std::abs(e_y) > 2.0 * look;
    s_fence = record(state, s_fence, !far);
    const double ds = wrapped_delta(s_fence - prev_s, len);
    if (std::abs(tr.cross_track.back()) <= tr.band) {
      if (!in_run) {
        in_run = true;
        run_start = tr.states.size() - 1;
        run_s = 0.0;
      } else {
        run_s += ds;
      }
      if (run_s >= len) {
        tr.converged = true;
        tr.converged_index = run_start;
        tr.loops_completed = run_s / len;
        return tr;
      }
    } else {
      in_run = false;
    }
  }
  tr.diagnostic = in_run ? fmt::format("horizon exhausted after {:.3g} of a loop inside the band", run_s / len)
                         : "horizon exhausted before the cross-track error settled in the band";
  if (in_run) {
    tr.converged_index = run_start;
    tr.loops_completed = run_s / len;
  }
  return tr;
}

SecurityReport verify_secure(const Scene& scene, const Perimeter& perimeter, const Trajectory& trajectory,
                             SecurityOptions opt) {
  SecurityReport rep;
  const double slack = opt.slack >= 0.0 ? opt.slack : trajectory.band;
  const double r_op = scene.params.r_op;
  const double step_bound = trajectory.v * trajectory.dt * (1.0 + r_op / scene.params.r_min) + slack;
  const double tol = scene.tol();
  if (opt.family == WitnessFamily::FenceNormal && opt.fence == nullptr)
    throw std::invalid_argument("the fence-normal witness needs the tracked fence");
  const CurveChain& P = perimeter.chain;
  rep.min_clearance = std::numeric_limits<double>::infinity();

  auto fail = [&](std::size_t k, std::string why) {
    if (rep.ok) {
      rep.ok = false;
      rep.first_violation = k;
      rep.reason = std::move(why);
    }
  };

  std::optional<Vec2> prev;
  for (std::size_t k = opt.from; k < trajectory.states.size(); ++k) {
    const Vec2 r = trajectory.states[k].r;
    const ChainProjection pr = P.project(r, tol);
    const bool inside = P.left_of(r) && pr.distance > tol;
    if (inside && pr.distance > slack) {
      rep.hard_failure = true;
      fail(k, fmt::format("state {} lies {:.3g} inside the d0-neighbourhood", k, pr.distance));
    }
    Vec2 c;
    if (opt.family == WitnessFamily::FenceNormal) {
      double s;
      if (k < trajectory.fence_s.size()) {
        s = trajectory.fence_s[k];
      } else {
        s = opt.fence->project(r, tol).points.front().s;
      }
      c = r - opt.fence->frame_at(s).after.normal * r_op;
    } else if (inside || pr.distance <= slack) {
      const JointFrames f = P.frame_at(pr.points.front().s);
      const Vec2 nrm = normalized(f.before.normal + f.after.normal);
      c = r - nrm * r_op;
    } else {
      c = r + normalized(r - pr.points.front().point) * r_op;
    }
    rep.centers.push_back(c);
    const double clearance = P.distance_to(c) - r_op;
    rep.clearance.push_back(clearance);
    rep.min_clearance = std::min(rep.min_clearance, clearance);
    if (clearance < -slack || !perimeter.in_exterior(c, tol))
      fail(k, fmt::format("witness disc at state {} reaches {:.3g} into the perimeter", k, -clearance));
    if (distance(r, c) > r_op + 1e-12) fail(k, fmt::format("witness disc at state {} misses the robot", k));
    if (prev && distance(*prev, c) > step_bound)
      fail(k, fmt::format("witness center jumps {:.3g} at state {}", distance(*prev, c), k));
    prev = c;
  }
  if (rep.centers.empty()) rep.min_clearance = 0.0;
  return rep;
}

}  // namespace fenceforge
