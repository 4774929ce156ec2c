#include "fenceforge/fence.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "fenceforge/errors.hpp"

namespace fenceforge {

namespace {

std::vector<Vec2> obstacle_points(const Scene& scene) {
  std::vector<Vec2> out;
  for (const Obstacle& o : scene.obstacles) out.push_back(o.representative());
  return out;
}

// One-sided sampled Hausdorff distance from chain a to chain b.
double directed_gap(const CurveChain& a, const CurveChain& b, double spacing) {
  double worst = 0.0;
  for (const Vec2& p : a.sample(spacing)) worst = std::max(worst, b.distance_to(p));
  return worst;
}

double sampled_hausdorff(const CurveChain& a, const CurveChain& b, double spacing) {
  return std::max(directed_gap(a, b, spacing), directed_gap(b, a, spacing));
}

bool right_of(const CurveChain& loop, Vec2 r) {
  const int w = loop.winding_number(r);
  return loop.signed_area() > 0.0 ? w == 0 : w == -1;
}

}  // namespace

double ErosionSet::distance_to_component(std::size_t k, Vec2 r) const {
  const CurveChain& c = components.at(k);
  const double d = c.distance_to(r);
  if (d > 0.0 && !c.left_of(r)) return 0.0;
  return d;
}

ErosionSet compute_erosion(const Scene& scene, const Perimeter& perimeter, double R) {
  const double tol = scene.tol();
  const double d = perimeter.d0 + R;
  const RegionSet regions = scene.regions();
  const BizarreVerdict verdict = is_bizarre(enumerate_bizarre(regions, tol), d, tol);
  if (!verdict.ok())
    throw AssumptionViolation(fmt::format("d0 + R = {:.12g} is bizarre ({})", d, verdict.matches[0].label));

  // Route b: boundary of the (d0 + R)-neighbourhood of D, exterior part.
  std::vector<BoundaryLoop> via_d;
  for (BoundaryLoop& loop : boundary_loops(regions, d, tol)) {
    if (perimeter.in_exterior(loop.chain.point_at(0.5 * loop.chain[0].length()), tol))
      via_d.push_back(std::move(loop));
  }
  // Route a: boundary of the R-neighbourhood of the perimeter's material side.
  const std::vector<BoundaryLoop> via_p =
      boundary_loops({Region::left_of(perimeter.chain)}, R, tol);

  if (via_d.empty() && via_p.empty())
    throw EmptyErosion(fmt::format("Q(R) is empty for R = {:.12g}", R));
  if (via_d.size() != via_p.size()) {
    throw ConsistencyFailure(fmt::format("erosion has {} component(s) via D but {} via P", via_d.size(),
                                         via_p.size()));
  }
  const double spacing = scene.diameter() / 2000.0;
  const double agree = 1e3 * tol;
  std::vector<bool> matched(via_p.size(), false);
  for (const BoundaryLoop& b : via_d) {
    bool found = false;
    for (std::size_t k = 0; k < via_p.size() && !found; ++k) {
      if (matched[k]) continue;
      if (sampled_hausdorff(b.chain, via_p[k].chain, spacing) <= agree) {
        matched[k] = true;
        found = true;
      }
    }
    if (!found) throw ConsistencyFailure("erosion boundaries via D and via P disagree");
  }

  ErosionSet out;
  out.R = R;
  for (BoundaryLoop& b : via_d) {
    if (b.chain.signed_area() > 0.0) out.unbounded = out.components.size();
    out.components.push_back(std::move(b.chain));
    out.provenance.push_back(std::move(b.provenance));
  }
  return out;
}

bool Fence::patch_contains(Vec2 r) const {
  const double scale = std::max(1.0, contact_path.bbox().diagonal());
  if (contact_path.distance_to(r) <= 1e-9 * scale) return true;
  return right_of(contact_path, r);
}

Fence build_fence(const Scene& scene, const Perimeter& perimeter, const ErosionSet& erosion,
                  std::size_t component) {
  const double tol = scene.tol();
  const double R = erosion.R;
  const CurveChain& central = erosion.components.at(component);
  const std::vector<BoundaryLoop> loops =
      boundary_loops({Region::left_of(central.reversed())}, R, tol);

  const std::vector<Vec2> obstacles = obstacle_points(scene);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    bool all_right = true;
    for (const Vec2& p : obstacles)
      if (loops[i].chain.left_of(p)) all_right = false;
    if (all_right) candidates.push_back(i);
  }
  if (candidates.size() != 1) {
    throw ConsistencyFailure(fmt::format("expected one contact path around component {}, found {}",
                                         component, candidates.size()));
  }
  const BoundaryLoop& loop = loops[candidates[0]];
  const CurveChain reversed = loop.chain.reversed();
  std::vector<Provenance> prov(loop.provenance.rbegin(), loop.provenance.rend());

  Fence fence;
  fence.R = R;
  fence.component = component;
  const double node_tol = 1e3 * tol;

  std::vector<Segment> segs;
  for (std::size_t i = 0; i < reversed.size(); ++i) {
    const Segment& seg = reversed[i];
    if (prov[i].kind != PieceKind::Circinate) {
      const ChainProjection pr = perimeter.chain.project(seg.midpoint(), tol);
      segs.push_back(seg);
      fence.provenance.push_back({FenceSegmentType::OnPerimeter, pr.points.front().segment});
      continue;
    }
    const Vec2 center = prov[i].birth;
    std::size_t stone = fence.door_stones.size();
    for (std::size_t k = 0; k < fence.door_stones.size(); ++k)
      if (distance(fence.door_stones[k].center, center) <= node_tol) stone = k;
    if (stone == fence.door_stones.size()) {
      DoorStone ds;
      ds.center = center;
      const ChainProjection pr = perimeter.chain.project(center, node_tol);
      for (const ProjectionPoint& p : pr.points) {
        bool dup = false;
        for (const Vec2& q : ds.contacts)
          if (distance(q, p.point) <= node_tol) dup = true;
        if (!dup) ds.contacts.push_back(p.point);
      }
      std::vector<double> angles;
      for (const Vec2& q : ds.contacts) angles.push_back(wrap_positive(angle_of(q - center)));
      std::sort(angles.begin(), angles.end());
      double max_gap = 0.0;
      for (std::size_t k = 0; k < angles.size(); ++k) {
        const double next = k + 1 < angles.size() ? angles[k + 1] : angles[0] + kTwoPi;
        max_gap = std::max(max_gap, next - angles[k]);
      }
      ds.main_angle = angles.size() < 2 ? 0.0 : kTwoPi - max_gap;
      const double clearance = distance_value(scene.regions(), center);
      if (clearance < perimeter.d0 + R - node_tol) {
        throw ConsistencyFailure(
            fmt::format("door stone at ({:.12g}, {:.12g}) overlaps the d0-neighbourhood", center.x, center.y));
      }
      fence.door_stones.push_back(ds);
    }
    // Split the gate at contacts strictly inside it.
    DoorStone& ds = fence.door_stones[stone];
    std::vector<double> cuts{0.0, seg.length()};
    for (const Vec2& q : ds.contacts) {
      const Segment::Foot f = seg.closest_point(q);
      if (f.dist <= node_tol && f.s > node_tol && f.s < seg.length() - node_tol) cuts.push_back(f.s);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const Segment gate = cuts.size() == 2 ? seg : seg.sub(cuts[k], cuts[k + 1]);
      const double sa = perimeter.chain.project(gate.start(), node_tol).points.front().s;
      const double sb = perimeter.chain.project(gate.end(), node_tol).points.front().s;
      ds.gates.push_back(gate);
      ds.caves.push_back(perimeter.chain.sub_chain(sa, sb));
      segs.push_back(gate);
      fence.provenance.push_back({FenceSegmentType::Gate, stone});
    }
  }
  fence.contact_path = CurveChain(std::move(segs), true, MaterialSide::Left);
  return fence;
}

LoopReport validate_loop(const CurveChain& chain, double r_minus, double r_plus, double tol_rel,
                         double angle_tol) {
  LoopReport rep;
  if (!chain.closed()) rep.violations.emplace_back("chain is not closed");
  if (chain.empty()) {
    rep.violations.emplace_back("chain is empty");
    return rep;
  }
  const double concave_limit = -(1.0 / r_minus) * (1.0 + tol_rel);
  const double convex_limit = (1.0 / r_plus) * (1.0 + tol_rel);
  const double join_tol = 1e-9 * std::max(1.0, chain.bbox().diagonal());
  const std::size_t n = chain.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double k = chain[i].curvature();
    if (k < concave_limit)
      rep.violations.push_back(fmt::format("segment {}: curvature {:.12g} below -1/R_minus", i, k));
    if (k > convex_limit)
      rep.violations.push_back(fmt::format("segment {}: curvature {:.12g} above 1/R_plus", i, k));
    const Segment& next = chain[(i + 1) % n];
    if (distance(chain[i].end(), next.start()) > join_tol)
      rep.violations.push_back(fmt::format("joint {}: segments do not meet", i));
    const Vec2 a = chain[i].end_tangent(), b = next.start_tangent();
    const double turn = std::abs(std::atan2(cross(a, b), dot(a, b)));
    if (turn > angle_tol)
      rep.violations.push_back(fmt::format("joint {}: regularity failure (tangent turns {:.3g} rad)", i, turn));
  }
  return rep;
}

std::vector<Fence> build_all_fences(const Scene& scene, const Perimeter& perimeter, double R) {
  const ErosionSet erosion = compute_erosion(scene, perimeter, R);
  std::vector<Fence> out;
  for (std::size_t k = 0; k < erosion.components.size(); ++k)
    out.push_back(build_fence(scene, perimeter, erosion, k));
  return out;
}

std::size_t select_initial_fence(const Scene& scene, const std::vector<Fence>& fences) {
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < fences.size(); ++i)
    if (fences[i].patch_contains(scene.r_in)) hits.push_back(i);
  if (hits.empty()) throw AssumptionViolation("no fence patch contains the initial location");
  if (hits.size() > 1)
    throw ConsistencyFailure(fmt::format("{} fence patches contain the initial location", hits.size()));
  return hits.front();
}

Fence initial_fence(const Scene& scene, const Perimeter& perimeter, double R) {
  std::vector<Fence> fences = build_all_fences(scene, perimeter, R);
  return std::move(fences[select_initial_fence(scene, fences)]);
}

NestingReport check_nesting(const Scene& scene, const Perimeter& perimeter, double R, double R_star,
                            std::size_t samples) {
  if (R < R_star) throw std::invalid_argument("nesting needs R >= R_star");
  const Fence big = initial_fence(scene, perimeter, R);
  const Fence small = initial_fence(scene, perimeter, R_star);
  NestingReport rep;
  const CurveChain& t = big.contact_path;
  const double len = t.length();
  for (std::size_t k = 0; k < samples; ++k) {
    const double s = len * (static_cast<double>(k) + 0.5) / static_cast<double>(samples);
    const Vec2 p = t.point_at(s);
    const Vec2 inward = -t.frame_at(s).after.normal;  // toward the patch
    const double depth = R * (static_cast<double>(k % 10) + 1.0) / 10.0;
    for (const Vec2& q : {p, p + inward * depth}) {
      ++rep.samples;
      if (!small.patch_contains(q)) {
        if (rep.violations == 0) rep.detail = fmt::format("({:.12g}, {:.12g}) escapes", q.x, q.y);
        ++rep.violations;
      }
    }
  }
  return rep;
}

}  // namespace fenceforge
