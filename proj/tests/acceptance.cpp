// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit if any
// criterion fails. Tolerances are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fenceforge/distance.hpp"
#include "fenceforge/dubins.hpp"
#include "fenceforge/errors.hpp"
#include "fenceforge/fence.hpp"
#include "fenceforge/grid_oracle.hpp"
#include "fenceforge/offset.hpp"
#include "fenceforge/scene.hpp"

namespace fenceforge {
namespace {

constexpr double kRelTol = 1e-9;             // criteria 1, 2: times the scene diameter
constexpr double kCurvatureRel = 1e-12;      // criterion 3: stored curvature vs closed form
constexpr double kMeasuredRel = 1e-9;        // criterion 3: three-point curvature vs closed form
constexpr double kKinkTol = 1e-9;            // criterion 4
constexpr double kOracleFactor = 2.0;        // criterion 6: Hausdorff <= 2h
constexpr std::size_t kSamples = 1000;       // criteria 1, 2, 8
constexpr std::uint64_t kSeed = 20240607;
constexpr double kFdEps = 1e-6;              // criterion 9
constexpr double kFdTol = 1e-4;
constexpr double kBandFactor = 1e-2;         // criterion 10: cross-track <= 1e-2 R_min
constexpr double kHorizon = 200.0;

const std::vector<std::string> kCorpus = {"disc", "two_points", "rounded_square", "peanut", "u_cave"};

struct Outcome {
  bool passed = true;
  std::string detail;
};

Scene corpus(const std::string& name) {
  return load_scene(std::string(FENCEFORGE_SCENE_DIR) + "/" + name + ".json");
}

Scene make(std::vector<Obstacle> obstacles, SceneParams params, Vec2 r_in, double theta_in) {
  Scene s;
  s.obstacles = std::move(obstacles);
  s.params = params;
  s.r_in = r_in;
  s.theta_in = theta_in;
  return s;
}

SceneParams params(double d0, double r_min, double r_op, double r_fence) {
  SceneParams p;
  p.d0 = d0;
  p.r_min = r_min;
  p.r_op = r_op;
  p.r_fence = r_fence;
  return p;
}

CurveChain circle(Vec2 c, double r) {
  return CurveChain({Segment::arc(c, r, 0.0, kPi), Segment::arc(c, r, kPi, kPi)}, true);
}

CurveChain polygon(const std::vector<Vec2>& pts) {
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < pts.size(); ++i) segs.push_back(Segment::line(pts[i], pts[(i + 1) % pts.size()]));
  return CurveChain(std::move(segs), true);
}

// Signed curvature of the circle through three points, positive when they
// turn left.
double three_point_curvature(Vec2 a, Vec2 b, Vec2 c) {
  const double twice_area = cross(b - a, c - a);
  return 2.0 * twice_area / (distance(a, b) * distance(b, c) * distance(c, a));
}

// 1. dist(r, P) = dist(r, D) - d0 on random exterior samples.
Outcome distance_identity() {
  Outcome o;
  double worst_ratio = 0.0;
  for (const std::string& name : kCorpus) {
    const Scene s = corpus(name);
    const Perimeter P = extract_perimeter(s);
    double worst = 0.0;
    for (const Vec2& r : sample_exterior(s, P, kSamples, kSeed))
      worst = std::max(worst, std::abs(P.chain.distance_to(r) - (dist_to_obstacles(s, r).distance - s.params.d0)));
    const double limit = kRelTol * s.diameter();
    worst_ratio = std::max(worst_ratio, worst / limit);
    if (worst > limit) o.passed = false;
    o.detail += fmt::format(" {}={:.2e}", name, worst);
  }
  o.detail = fmt::format("max residual / (1e-9 diam) = {:.2e};", worst_ratio) + o.detail;
  return o;
}

// 2. p -> p + d0 N(r, p) maps Pr(r, D) one-to-one onto Pr(r, P).
Outcome projection_bijection() {
  Outcome o;
  std::size_t checked = 0, multi = 0, failures = 0;
  double worst = 0.0;
  for (const std::string& name : kCorpus) {
    const Scene s = corpus(name);
    const Perimeter P = extract_perimeter(s);
    const double limit = kRelTol * s.diameter();
    for (const Vec2& r : sample_exterior(s, P, kSamples, kSeed)) {
      const DistanceResult dd = dist_to_obstacles(s, r);
      const ChainProjection dp = P.chain.project(r, s.tol());
      if (dd.degenerate_arc || dp.degenerate_arc) continue;
      ++checked;
      if (dd.projections.size() > 1) ++multi;
      if (dd.projections.size() != dp.points.size()) {
        ++failures;
        continue;
      }
      std::vector<bool> used(dp.points.size(), false);
      for (const Vec2& p : dd.projections) {
        const Vec2 rho = p + normalized(r - p) * s.params.d0;
        std::size_t best = dp.points.size();
        double best_d = INFINITY;
        for (std::size_t j = 0; j < dp.points.size(); ++j) {
          const double dj = distance(rho, dp.points[j].point);
          if (!used[j] && dj < best_d) best_d = dj, best = j;
        }
        if (best == dp.points.size() || best_d > limit) {
          ++failures;
          break;
        }
        used[best] = true;
        worst = std::max(worst, best_d / limit);
      }
    }
  }
  o.passed = failures == 0 && checked > 0;
  o.detail = fmt::format("{} samples ({} with several projections), {} mismatches, worst match / (1e-9 diam) = {:.2e}",
                         checked, multi, failures, worst);
  return o;
}

// 3. Offset curvature follows kappa / (1 + d* kappa).
Outcome curvature_transform() {
  Outcome o;
  std::size_t pieces = 0;
  double worst_stored = 0.0, worst_measured = 0.0;
  for (const std::string& name : kCorpus) {
    const Scene s = corpus(name);
    const SceneParams& p = s.params;
    for (double d_star : {p.d0, p.d0 + p.r_op, p.d0 + p.r_fence}) {
      for (const EnsemblePiece& piece : build_ensemble(s, d_star).pieces) {
        if (piece.source.kind == PieceKind::Circinate || piece.degenerate || !piece.segment) continue;
        const double k = piece.source.base_curvature;
        const double expected = k / (1.0 + d_star * k);
        const Segment& g = *piece.segment;
        const double scale = std::max(1.0, std::abs(expected));
        const double stored = std::abs(g.curvature() - expected) / scale;
        const double L = g.length();
        const double measured =
            std::abs(three_point_curvature(g.point_at(0.1 * L), g.point_at(0.5 * L), g.point_at(0.9 * L)) - expected) /
            scale;
        worst_stored = std::max(worst_stored, stored);
        worst_measured = std::max(worst_measured, measured);
        if (stored > kCurvatureRel || measured > kMeasuredRel) o.passed = false;
        ++pieces;
      }
    }
  }
  o.detail = fmt::format("{} pieces over 3 offset distances; worst stored {:.1e}, worst three-point {:.1e}", pieces,
                         worst_stored, worst_measured);
  return o;
}

// 4. Curvature of P at most 1/d0, no left kinks.
Outcome perimeter_constraints() {
  Outcome o;
  double worst_excess = -INFINITY, worst_kink = -INFINITY;
  for (const std::string& name : kCorpus) {
    const Scene s = corpus(name);
    const Perimeter P = extract_perimeter(s);
    for (std::size_t i = 0; i < P.chain.size(); ++i) {
      const Segment& g = P.chain[i];
      const Segment& next = P.chain[(i + 1) % P.chain.size()];
      const double excess = g.curvature() - 1.0 / s.params.d0;
      const double kink = cross(g.end_tangent(), next.start_tangent());
      worst_excess = std::max(worst_excess, excess);
      worst_kink = std::max(worst_kink, kink);
      if (excess > kKinkTol || kink > kKinkTol) o.passed = false;
    }
  }
  o.detail = fmt::format("max (kappa - 1/d0) = {:.2e}, max left turn at joints = {:.2e}", worst_excess, worst_kink);
  return o;
}

// 5. Every fence is an (R, R_op)-loop; gate segments are exact R-arcs.
Outcome fence_loops() {
  Outcome o;
  std::size_t fences = 0, gates = 0;
  double worst_gate = 0.0;
  for (const std::string& name : kCorpus) {
    const Scene s = corpus(name);
    const Perimeter P = extract_perimeter(s);
    for (double R : {s.params.r_op, s.params.r_fence}) {
      for (const Fence& f : build_all_fences(s, P, R)) {
        ++fences;
        const LoopReport rep = validate_loop(f.contact_path, R, s.params.r_op);
        if (!rep.ok()) {
          o.passed = false;
          o.detail += fmt::format(" {} R={}: {};", name, R, rep.violations.front());
        }
        for (std::size_t i = 0; i < f.contact_path.size(); ++i) {
          if (f.provenance[i].type != FenceSegmentType::Gate) continue;
          ++gates;
          const Segment& g = f.contact_path[i];
          const double err = g.is_arc() ? std::abs(g.curvature() + 1.0 / R) * R : INFINITY;
          worst_gate = std::max(worst_gate, err);
          if (err > kCurvatureRel) o.passed = false;
        }
      }
    }
  }
  o.detail = fmt::format("{} fences at R in {{R_op, R}}, {} gate arcs, worst |kappa R + 1| = {:.1e};", fences, gates,
                         worst_gate) +
             o.detail;
  return o;
}

// 6. Fence and perimeter against the raster oracle.
Outcome oracle_equivalence() {
  Outcome o;
  for (const std::string& name : kCorpus) {
    const Scene s = corpus(name);
    const Perimeter P = extract_perimeter(s);
    const GridOracle grid = build_grid_oracle(s);
    const double h = grid.pitch;
    const double hp = hausdorff(grid.boundary_points(grid.exterior), {P.chain}, h / 4.0);
    std::vector<CurveChain> chains;
    for (const Fence& f : build_all_fences(s, P, s.params.r_fence)) chains.push_back(f.contact_path);
    const double hf = hausdorff(grid.boundary_points(grid.opening(s.params.r_fence)), chains, h / 4.0);
    if (hp > kOracleFactor * h || hf > kOracleFactor * h) o.passed = false;
    o.detail += fmt::format(" {}: P {:.2f}h, fence {:.2f}h;", name, hp / h, hf / h);
  }
  o.detail = "Hausdorff in units of h = diam/512 (limit 2h):" + o.detail;
  return o;
}

// 7. Finite enumeration; planted degeneracies carry the right case.
Outcome bizarre_detection() {
  Outcome o;
  std::size_t total = 0;
  for (const std::string& name : kCorpus) {
    const BizarreReport rep = enumerate_bizarre(corpus(name));
    total += rep.enumeration.size();
    for (const BizarreCandidate& c : rep.enumeration)
      if (!std::isfinite(c.value) || c.value <= 0.0) o.passed = false;
  }
  const double d = 2.0;
  const SceneParams p = params(1.0, 0.4, 0.5, 0.8);
  struct Planted {
    const char* what;
    Scene scene;
    BizarreCase expected;
  };
  const std::vector<Planted> planted = {
      {"concave arc radius d*", make({Obstacle::loop(circle({0, 0}, d), Material::Exterior)}, p, {0, 0.5}, 0.0),
       BizarreCase::I},
      {"parallel walls at gap 2d*",
       make({Obstacle::loop(polygon({{-10, d}, {10, d}, {10, d + 1}, {-10, d + 1}}), Material::Interior),
             Obstacle::loop(polygon({{-10, -d - 1}, {10, -d - 1}, {10, -d}, {-10, -d}}), Material::Interior)},
            p, {0, 0}, 0.0),
       BizarreCase::II},
      {"point pair at gap 2d*", make({Obstacle::at({-d, 0}), Obstacle::at({d, 0})}, p, {0, 3}, 0.0),
       BizarreCase::III},
  };
  for (const Planted& t : planted) {
    const BizarreVerdict v = is_bizarre(t.scene, d);
    const bool labelled = std::any_of(v.matches.begin(), v.matches.end(),
                                      [&](const BizarreCandidate& c) { return c.which == t.expected; });
    const bool clear_nearby = is_bizarre(t.scene, d + 0.05).ok();
    if (!labelled || !clear_nearby) o.passed = false;
    o.detail += fmt::format(" {} -> {}{};", t.what, labelled ? "case " : "MISSING case ", case_name(t.expected));
  }
  o.detail = fmt::format("{} candidates over the corpus;", total) + o.detail;
  return o;
}

// 8. Patch nesting on the U cave.
Outcome nesting() {
  Outcome o;
  const Scene s = corpus("u_cave");
  const Perimeter P = extract_perimeter(s);
  const double r_op = s.params.r_op;
  const std::vector<double> radii = {r_op, 1.5 * r_op, 2.0 * r_op};
  std::size_t pairs = 0, violations = 0;
  for (double R : radii) {
    for (double R_star : radii) {
      if (R < R_star) continue;
      const NestingReport rep = check_nesting(s, P, R, R_star, kSamples);
      ++pairs;
      violations += rep.violations;
      if (!rep.ok() || rep.samples < kSamples) o.passed = false;
    }
  }
  o.detail = fmt::format("{} radius pairs from {{R_op, 1.5 R_op, 2 R_op}}, {} violations", pairs, violations);
  return o;
}

// 9. distance_rate against central differences along smooth curves.
Outcome distance_derivative() {
  Outcome o;
  double worst = 0.0;
  std::size_t compared = 0;
  int traj = 0;
  for (const std::string& name : kCorpus) {
    const Scene s = corpus(name);
    for (int rep = 0; rep < 2; ++rep, ++traj) {
      const double rad = 3.6 + 0.4 * traj, phase = 0.7 * traj, wob = 0.15 + 0.03 * traj;
      auto at = [&](double t) {
        const double a = t + phase;
        return Vec2{rad * std::cos(a) + wob * std::sin(3 * a), rad * std::sin(a) + wob * std::cos(2 * a)};
      };
      auto vel = [&](double t) {
        const double a = t + phase;
        return Vec2{-rad * std::sin(a) + 3 * wob * std::cos(3 * a), rad * std::cos(a) - 2 * wob * std::sin(2 * a)};
      };
      for (int k = 0; k < 200; ++k) {
        const double t = kTwoPi * k / 200.0;
        const DistanceResult lo = dist_to_obstacles(s, at(t - kFdEps));
        const DistanceResult mid = dist_to_obstacles(s, at(t));
        const DistanceResult hi = dist_to_obstacles(s, at(t + kFdEps));
        if (mid.inside || mid.degenerate_arc) continue;
        if (lo.projections.size() != 1 || mid.projections.size() != 1 || hi.projections.size() != 1) continue;
        if (lo.sources[0].index != mid.sources[0].index || hi.sources[0].index != mid.sources[0].index) continue;
        const DistanceRate rate = distance_rate(s, at(t), vel(t));
        const double fd = (hi.distance - lo.distance) / (2.0 * kFdEps);
        worst = std::max(worst, std::abs(fd - rate.value()));
        ++compared;
      }
    }
  }
  o.passed = worst <= kFdTol && compared > 1000;
  o.detail = fmt::format("{} trajectories, {} points, max |fd - rate| = {:.2e}", traj, compared, worst);
  return o;
}

// 10. Tracking every corpus fence.
Outcome tracking() {
  Outcome o;
  for (const std::string& name : kCorpus) {
    const Scene s = corpus(name);
    const Perimeter P = extract_perimeter(s);
    if (std::abs(s.params.r_op - 1.25 * s.params.r_min) > 1e-12) {
      o.passed = false;
      o.detail += fmt::format(" {}: R_op != 1.25 R_min;", name);
      continue;
    }
    for (double R : {s.params.r_fence, s.params.r_op}) {
      const Fence f = initial_fence(s, P, R);
      const Trajectory tr = track_fence(s, f.contact_path, kHorizon);
      double max_omega = 0.0, max_err = 0.0;
      for (double w : tr.controls) max_omega = std::max(max_omega, std::abs(w));
      for (std::size_t k = tr.converged_index; k < tr.cross_track.size(); ++k)
        max_err = std::max(max_err, std::abs(tr.cross_track[k]));
      SecurityOptions so;
      so.family = WitnessFamily::FenceNormal;
      so.fence = &f.contact_path;
      so.from = tr.converged ? tr.converged_index : tr.states.size();
      const SecurityReport sec = verify_secure(s, P, tr, so);
      const bool ok = tr.converged && tr.loops_completed >= 1.0 && max_omega <= s.omega_max() + 1e-12 &&
                      max_err <= kBandFactor * s.params.r_min && sec.ok;
      if (!ok) o.passed = false;
      o.detail += fmt::format(" {}@R={}: {}loops {:.2f}, err {:.1e}, |w|/w_max {:.3f}, secure {};", name, R,
                              tr.converged ? "" : "NOT CONVERGED ", tr.loops_completed, max_err,
                              max_omega / s.omega_max(), sec.ok ? "yes" : sec.reason);
    }
  }
  return o;
}

// 11. Initial fence selection, and refusal of scenes violating the start
// assumption.
Outcome initial_fence_selection() {
  Outcome o;
  for (const std::string& name : kCorpus) {
    const Scene s = corpus(name);
    const Perimeter P = extract_perimeter(s);
    if (!check_initial_clearance(s, P).ok) continue;
    const std::vector<Fence> fences = build_all_fences(s, P, s.params.r_fence);
    std::size_t containing = 0;
    for (const Fence& f : fences) containing += f.patch_contains(s.r_in);
    const std::size_t chosen = select_initial_fence(s, fences);
    if (containing != 1 || !fences[chosen].patch_contains(s.r_in)) o.passed = false;
    o.detail += fmt::format(" {}: {} of {};", name, containing, fences.size());
  }
  const Obstacle bottle = Obstacle::loop(polygon({{-6, -6}, {6, -6}, {6, 6}, {1.4, 6}, {1.4, 4}, {4, 4}, {4, -4},
                                                  {-4, -4}, {-4, 4}, {-1.4, 4}, {-1.4, 6}, {-6, 6}}),
                                         Material::Interior);
  struct Refused {
    const char* what;
    Scene scene;
    const char* reason;
  };
  const std::vector<Refused> refused = {
      {"robot far away", make({Obstacle::at({0, 0})}, params(1.0, 0.4, 0.5, 2.5), {20, 0}, 0.0), "3 R_min"},
      {"robot inside N^d0", make({Obstacle::at({0, 0})}, params(1.0, 0.4, 0.5, 2.5), {0.5, 0}, 0.0), "exterior"},
      {"empty erosion", make({Obstacle::loop(circle({0, 0}, 4.0), Material::Exterior)}, params(1.0, 0.4, 0.5, 3.2),
                             {0, 2.9}, 0.0),
       "Q(R) is empty"},
      {"turning circles far from every component", make({bottle}, params(1.0, 0.2, 0.5, 1.5), {0, 5}, kPi / 2),
       "single component"},
  };
  for (const Refused& t : refused) {
    const ClearanceResult c = check_initial_clearance(t.scene, extract_perimeter(t.scene));
    const bool right = !c.ok && c.reason.find(t.reason) != std::string::npos;
    if (!right) o.passed = false;
    o.detail += fmt::format(" {} -> {};", t.what, c.ok ? "ACCEPTED" : c.reason);
  }
  return o;
}

}  // namespace
}  // namespace fenceforge

int main() {
  using namespace fenceforge;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "distance identity dist(r,P) = dist(r,D) - d0", distance_identity},
      {2, "projection bijection between Pr(r,D) and Pr(r,P)", projection_bijection},
      {3, "offset curvature kappa/(1 + d* kappa)", curvature_transform},
      {4, "perimeter curvature <= 1/d0, no left kinks", perimeter_constraints},
      {5, "fences are (R, R_op)-loops with exact gate arcs", fence_loops},
      {6, "grid oracle equivalence", oracle_equivalence},
      {7, "bizarre enumeration and planted detection", bizarre_detection},
      {8, "patch nesting on the U cave", nesting},
      {9, "distance rate vs finite differences", distance_derivative},
      {10, "Dubins tracking of corpus fences", tracking},
      {11, "initial fence selection and start refusal", initial_fence_selection},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.passed) ++failed;
    std::printf("[%s] %d %s (%.1fs): %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
