#include "fenceforge/geometry.hpp"

#include <algorithm>
#include <limits>

namespace fenceforge {

namespace {

constexpr double kParallelSin = 1e-12;

double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }

void push_unique(std::vector<Vec2>& pts, Vec2 p, double tol) {
  for (const Vec2& q : pts)
    if (distance(p, q) <= tol) return;
  pts.push_back(p);
}

// Counterclockwise angular interval [lo, lo + width] covered by an arc.
struct AngularInterval {
  double lo;
  double width;
};

AngularInterval ccw_interval(const Segment& arc) {
  if (arc.sweep() >= 0.0) return {arc.start_angle(), arc.sweep()};
  return {arc.start_angle() + arc.sweep(), -arc.sweep()};
}

IntersectionSet intersect_lines(const Segment& s1, const Segment& s2, double tol) {
  IntersectionSet out;
  const Vec2 a1 = s1.a(), a2 = s2.a();
  const Vec2 d1 = s1.b() - a1, d2 = s2.b() - a2;
  const double l1 = norm(d1), l2 = norm(d2);
  const double denom = cross(d1, d2);
  if (std::abs(denom) <= kParallelSin * l1 * l2) {
    const Vec2 u = d1 / l1;
    if (std::abs(cross(u, a2 - a1)) > tol) return out;
    double t0 = dot(a2 - a1, u), t1 = dot(s2.b() - a1, u);
    if (t0 > t1) std::swap(t0, t1);
    const double lo = std::max(0.0, t0), hi = std::min(l1, t1);
    if (hi - lo > tol) {
      out.overlaps.push_back(s1.sub(lo, hi));
    } else if (hi - lo >= -tol) {
      out.points.push_back(a1 + u * std::clamp(0.5 * (lo + hi), 0.0, l1));
    }
    return out;
  }
  const Vec2 w = a2 - a1;
  const double t = cross(w, d2) / denom;
  const double u = cross(w, d1) / denom;
  const double e1 = tol / l1, e2 = tol / l2;
  if (t < -e1 || t > 1.0 + e1 || u < -e2 || u > 1.0 + e2) return out;
  out.points.push_back(a1 + d1 * std::clamp(t, 0.0, 1.0));
  return out;
}

IntersectionSet intersect_line_arc(const Segment& line, const Segment& arc, double tol) {
  IntersectionSet out;
  const Vec2 a = line.a();
  const double len = line.length();
  const Vec2 d = (line.b() - a) / len;
  const Vec2 c = arc.center();
  const double rho = arc.radius();
  const double proj = dot(c - a, d);
  const Vec2 q = a + d * proj;
  const double h = distance(q, c);
  if (h > rho + tol) return out;
  std::vector<double> ts;
  if (std::abs(h - rho) <= tol) {
    ts.push_back(proj);
  } else {
    const double half = std::sqrt(std::max(0.0, rho * rho - h * h));
    ts.push_back(proj - half);
    ts.push_back(proj + half);
  }
  const double eps = tol / rho;
  for (double t : ts) {
    if (t < -tol || t > len + tol) continue;
    const Vec2 p = a + d * std::clamp(t, 0.0, len);
    if (!arc.arc_contains_angle(angle_of(p - c), eps)) continue;
    push_unique(out.points, p, tol);
  }
  return out;
}

IntersectionSet intersect_arcs(const Segment& s1, const Segment& s2, double tol) {
  IntersectionSet out;
  const Vec2 c1 = s1.center(), c2 = s2.center();
  const double r1 = s1.radius(), r2 = s2.radius();
  const double dd = distance(c1, c2);
  if (dd <= tol) {
    if (std::abs(r1 - r2) > tol) return out;
    // Same circle: intersect the angular intervals.
    const AngularInterval ia = ccw_interval(s1), ib = ccw_interval(s2);
    const double eps = tol / r1;
    const double b0 = ia.lo + wrap_positive(ib.lo - ia.lo);
    const double a1 = ia.lo + ia.width;
    std::vector<std::pair<double, double>> pieces;
    if (b0 <= a1 + eps) pieces.emplace_back(b0, std::min(b0 + ib.width, a1));
    if (b0 + ib.width - kTwoPi >= ia.lo - eps)
      pieces.emplace_back(ia.lo, std::min(a1, b0 + ib.width - kTwoPi));
    for (auto [lo, hi] : pieces) {
      if (hi - lo > eps) {
        Segment piece = Segment::arc(c1, r1, lo, hi - lo);
        out.overlaps.push_back(s1.sweep() >= 0.0 ? piece : piece.reversed());
      } else {
        push_unique(out.points, c1 + unit_from_angle(0.5 * (lo + hi)) * r1, tol);
      }
    }
    return out;
  }
  if (dd > r1 + r2 + tol || dd < std::abs(r1 - r2) - tol) return out;
  const Vec2 u = (c2 - c1) / dd;
  std::vector<Vec2> cands;
  if (std::abs(dd - (r1 + r2)) <= tol) {
    cands.push_back(c1 + u * r1);
  } else if (std::abs(dd - std::abs(r1 - r2)) <= tol) {
    cands.push_back(r1 >= r2 ? c1 + u * r1 : c1 - u * r1);
  } else {
    const double along = (dd * dd + r1 * r1 - r2 * r2) / (2.0 * dd);
    const double h = std::sqrt(std::max(0.0, r1 * r1 - along * along));
    cands.push_back(c1 + u * along + perp(u) * h);
    cands.push_back(c1 + u * along - perp(u) * h);
  }
  for (const Vec2& p : cands) {
    if (!s1.arc_contains_angle(angle_of(p - c1), tol / r1)) continue;
    if (!s2.arc_contains_angle(angle_of(p - c2), tol / r2)) continue;
    push_unique(out.points, p, tol);
  }
  return out;
}

}  // namespace

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  if (w > kPi) w -= kTwoPi;
  return w;
}

double wrap_positive(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

void BoundingBox::expand(Vec2 p) {
  lo.x = std::min(lo.x, p.x);
  lo.y = std::min(lo.y, p.y);
  hi.x = std::max(hi.x, p.x);
  hi.y = std::max(hi.y, p.y);
}

void BoundingBox::expand(const BoundingBox& o) {
  if (o.empty()) return;
  expand(o.lo);
  expand(o.hi);
}

// ---------------------------------------------------------------- Segment

Segment Segment::line(Vec2 a, Vec2 b) {
  if (!is_finite(a) || !is_finite(b)) throw GeometryError("line segment with non-finite endpoint");
  if (a == b) throw GeometryError("line segment with coincident endpoints");
  Segment s;
  s.kind_ = SegmentKind::Line;
  s.a_ = a;
  s.b_ = b;
  return s;
}

Segment Segment::arc(Vec2 center, double radius, double start_angle, double sweep) {
  if (!is_finite(center) || !std::isfinite(radius) || !std::isfinite(start_angle) ||
      !std::isfinite(sweep))
    throw GeometryError("arc with non-finite data");
  if (radius <= 0.0) throw GeometryError("arc radius must be positive");
  if (sweep == 0.0 || std::abs(sweep) > kTwoPi * (1.0 + 1e-12))
    throw GeometryError("arc sweep must satisfy 0 < |sweep| <= 2pi");
  Segment s;
  s.kind_ = SegmentKind::Arc;
  s.center_ = center;
  s.radius_ = radius;
  s.start_angle_ = start_angle;
  s.sweep_ = std::clamp(sweep, -kTwoPi, kTwoPi);
  s.a_ = s.start();
  s.b_ = s.end();
  return s;
}

Segment Segment::arc_between(Vec2 center, double radius, Vec2 from, Vec2 to, bool ccw) {
  const double a0 = angle_of(from - center);
  const double a1 = angle_of(to - center);
  double sweep = ccw ? wrap_positive(a1 - a0) : -wrap_positive(a0 - a1);
  if (sweep == 0.0) sweep = ccw ? kTwoPi : -kTwoPi;
  return arc(center, radius, a0, sweep);
}

Vec2 Segment::start() const {
  if (is_line()) return a_;
  return center_ + unit_from_angle(start_angle_) * radius_;
}

Vec2 Segment::end() const {
  if (is_line()) return b_;
  return center_ + unit_from_angle(start_angle_ + sweep_) * radius_;
}

double Segment::length() const {
  return is_line() ? distance(a_, b_) : radius_ * std::abs(sweep_);
}

double Segment::curvature() const {
  if (is_line()) return 0.0;
  return sweep_ > 0.0 ? 1.0 / radius_ : -1.0 / radius_;
}

Vec2 Segment::point_at(double s) const {
  if (is_line()) return a_ + (b_ - a_) * (s / length());
  return center_ + unit_from_angle(start_angle_ + sgn(sweep_) * s / radius_) * radius_;
}

Vec2 Segment::tangent_at(double s) const {
  if (is_line()) return normalized(b_ - a_);
  return perp(unit_from_angle(start_angle_ + sgn(sweep_) * s / radius_)) * sgn(sweep_);
}

FrenetFrame Segment::frame_at(double s) const {
  const Vec2 t = tangent_at(s);
  return {t, perp(t), curvature()};
}

Segment Segment::reversed() const {
  if (is_line()) return line(b_, a_);
  return arc(center_, radius_, start_angle_ + sweep_, -sweep_);
}

Segment Segment::sub(double s0, double s1) const {
  if (is_line()) return line(point_at(s0), point_at(s1));
  const double g = sgn(sweep_);
  return arc(center_, radius_, start_angle_ + g * s0 / radius_, g * (s1 - s0) / radius_);
}

bool Segment::arc_contains_angle(double angle, double eps) const {
  const double u = wrap_positive(sgn(sweep_) * (angle - start_angle_));
  return u <= std::abs(sweep_) + eps || u >= kTwoPi - eps;
}

Segment::Foot Segment::closest_point(Vec2 r) const {
  if (is_line()) {
    const Vec2 d = b_ - a_;
    const double t = std::clamp(dot(r - a_, d) / dot(d, d), 0.0, 1.0);
    const Vec2 p = a_ + d * t;
    return {p, t * length(), distance(p, r)};
  }
  const Vec2 rel = r - center_;
  const double len = length();
  if (norm(rel) > 0.0) {
    const double u = wrap_positive(sgn(sweep_) * (angle_of(rel) - start_angle_));
    if (u <= std::abs(sweep_)) {
      const double s = std::min(u * radius_, len);
      const Vec2 p = point_at(s);
      return {p, s, distance(p, r)};
    }
  }
  const Vec2 p0 = start(), p1 = end();
  const double d0 = distance(p0, r), d1 = distance(p1, r);
  if (d0 <= d1) return {p0, 0.0, d0};
  return {p1, len, d1};
}

BoundingBox Segment::bbox() const {
  BoundingBox box;
  box.expand(start());
  box.expand(end());
  if (is_arc()) {
    for (int k = 0; k < 4; ++k) {
      const double ang = k * 0.5 * kPi;
      if (arc_contains_angle(ang, 0.0)) box.expand(center_ + unit_from_angle(ang) * radius_);
    }
  }
  return box;
}

IntersectionSet intersect(const Segment& s1, const Segment& s2, double tol) {
  if (s1.is_line() && s2.is_line()) return intersect_lines(s1, s2, tol);
  if (s1.is_arc() && s2.is_arc()) return intersect_arcs(s1, s2, tol);
  if (s1.is_line()) return intersect_line_arc(s1, s2, tol);
  return intersect_line_arc(s2, s1, tol);
}

// ------------------------------------------------------------- CurveChain

CurveChain::CurveChain(std::vector<Segment> segments, bool closed, MaterialSide material)
    : segments_(std::move(segments)), closed_(closed), material_(material) {
  offsets_.reserve(segments_.size() + 1);
  double acc = 0.0;
  offsets_.push_back(acc);
  for (const Segment& s : segments_) {
    acc += s.length();
    offsets_.push_back(acc);
  }
}

std::pair<std::size_t, double> CurveChain::locate(double s) const {
  if (segments_.empty()) throw GeometryError("locate on an empty chain");
  const double total = length();
  if (closed_) {
    s = std::fmod(s, total);
    if (s < 0.0) s += total;
  } else {
    s = std::clamp(s, 0.0, total);
  }
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), s);
  std::size_t i = it == offsets_.begin() ? 0 : static_cast<std::size_t>(it - offsets_.begin()) - 1;
  i = std::min(i, segments_.size() - 1);
  return {i, std::clamp(s - offsets_[i], 0.0, segments_[i].length())};
}

Vec2 CurveChain::point_at(double s) const {
  auto [i, local] = locate(s);
  return segments_[i].point_at(local);
}

JointFrames CurveChain::frame_at(double s) const {
  const double eps = 1e-12 * std::max(1.0, length());
  if (!closed_ && (s < -eps || s > length() + eps))
    throw std::out_of_range("arc-length coordinate outside the open chain");
  auto [i, local] = locate(s);
  const std::size_t n = segments_.size();
  JointFrames out;
  const Segment& seg = segments_[i];
  if (local <= eps && (closed_ || i > 0)) {
    const Segment& prev = segments_[(i + n - 1) % n];
    out.before = prev.frame_at(prev.length());
    out.after = seg.frame_at(0.0);
    out.at_joint = true;
  } else if (local >= seg.length() - eps && (closed_ || i + 1 < n)) {
    const Segment& next = segments_[(i + 1) % n];
    out.before = seg.frame_at(seg.length());
    out.after = next.frame_at(0.0);
    out.at_joint = true;
  } else {
    out.before = out.after = seg.frame_at(local);
  }
  return out;
}

double CurveChain::signed_area() const {
  double twice = 0.0;
  for (const Segment& s : segments_) {
    if (s.is_line()) {
      twice += cross(s.a(), s.b());
    } else {
      twice += cross(s.center(), s.end() - s.start()) + s.radius() * s.radius() * s.sweep();
    }
  }
  return 0.5 * twice;
}

int CurveChain::winding_number(Vec2 r) const {
  double total = 0.0;
  for (const Segment& s : segments_) {
    const Vec2 p0 = s.start() - r, p1 = s.end() - r;
    if (s.is_line()) {
      total += std::atan2(cross(p0, p1), dot(p0, p1));
      continue;
    }
    const double raw = wrap_angle(angle_of(p1) - angle_of(p0));
    if (distance(r, s.center()) < s.radius()) {
      const double g = sgn(s.sweep());
      double change = wrap_positive(g * raw);
      // A full-circle arc returns to its start direction.
      if (std::abs(s.sweep()) >= kTwoPi - 1e-12 && change < kPi) change += kTwoPi;
      total += g * change;
    } else {
      total += raw;
    }
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

Side CurveChain::side(Vec2 r, double tol) const {
  if (distance_to(r) <= tol) return Side::OnBoundary;
  return winding_number(r) != 0 ? Side::Inside : Side::Outside;
}

bool CurveChain::left_of(Vec2 r) const {
  const int w = winding_number(r);
  return signed_area() > 0.0 ? w != 0 : w == 0;
}

ChainProjection CurveChain::project(Vec2 r, double tol) const {
  // A foot clamped to a joint is a local minimizer only if the neighbouring
  // segment also clamps to that joint; otherwise the neighbour holds the
  // true minimizer and the joint is a spurious near-tie.
  enum Clamp { kInterior, kAtStart, kAtEnd };
  struct Cand {
    Segment::Foot foot;
    Clamp clamp;
  };
  const std::size_t n = segments_.size();
  std::vector<std::vector<Cand>> feet(n);
  std::vector<bool> degenerate_seg(n, false);
  std::optional<Segment> degenerate;
  double degenerate_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& seg = segments_[i];
    const double len = seg.length();
    if (seg.is_arc() && distance(r, seg.center()) <= tol) {
      degenerate_seg[i] = true;
      feet[i] = {{{seg.start(), 0.0, seg.radius()}, kAtStart}, {{seg.end(), len, seg.radius()}, kAtEnd}};
      if (seg.radius() < degenerate_d) {
        degenerate_d = seg.radius();
        degenerate = seg;
      }
      continue;
    }
    const Segment::Foot f = seg.closest_point(r);
    if (f.s > 0.0 && f.s < len) {
      feet[i] = {{f, kInterior}};
    } else if (seg.is_line()) {
      feet[i] = {{f, f.s <= 0.0 ? kAtStart : kAtEnd}};
    } else {
      // Off the swept range both arc endpoints are local minimizers.
      feet[i] = {{{seg.start(), 0.0, distance(seg.start(), r)}, kAtStart},
                 {{seg.end(), len, distance(seg.end(), r)}, kAtEnd}};
    }
  }
  auto clamps_at = [&](std::size_t j, Clamp c) {
    if (degenerate_seg[j]) return true;
    for (const Cand& k : feet[j])
      if (k.clamp == c) return true;
    return false;
  };
  ChainProjection out;
  if (n == 0) {
    out.distance = std::numeric_limits<double>::infinity();
    return out;
  }
  std::vector<ProjectionPoint> cands;
  std::vector<double> dists;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Cand& c : feet[i]) {
      if (c.clamp != kInterior) {
        const bool at_start = c.clamp == kAtStart;
        const bool has_neighbour = closed_ || (at_start ? i > 0 : i + 1 < n);
        if (has_neighbour && !clamps_at(at_start ? (i + n - 1) % n : (i + 1) % n, at_start ? kAtEnd : kAtStart))
          continue;
      }
      cands.push_back({c.foot.point, i, offsets_[i] + c.foot.s});
      dists.push_back(c.foot.dist);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (double d : dists) best = std::min(best, d);
  out.distance = best;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    if (dists[k] > best + tol) continue;
    bool dup = false;
    for (const ProjectionPoint& q : out.points)
      if (distance(q.point, cands[k].point) <= tol) dup = true;
    if (!dup) out.points.push_back(cands[k]);
  }
  if (degenerate && degenerate_d <= best + tol) out.degenerate_arc = degenerate;
  return out;
}

double CurveChain::distance_to(Vec2 r) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& s : segments_) best = std::min(best, s.closest_point(r).dist);
  return best;
}

CurveChain CurveChain::reversed() const {
  std::vector<Segment> rev;
  rev.reserve(segments_.size());
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) rev.push_back(it->reversed());
  return CurveChain(std::move(rev), closed_,
                    material_ == MaterialSide::Left ? MaterialSide::Right : MaterialSide::Left);
}

CurveChain CurveChain::sub_chain(double s0, double s1) const {
  const double total = length();
  if (closed_) {
    s0 = std::fmod(s0, total);
    if (s0 < 0.0) s0 += total;
    s1 = std::fmod(s1, total);
    if (s1 < 0.0) s1 += total;
    if (s1 <= s0) s1 += total;
  } else {
    s0 = std::clamp(s0, 0.0, total);
    s1 = std::clamp(s1, 0.0, total);
    if (s1 < s0) std::swap(s0, s1);
  }
  const double eps = 1e-12 * std::max(1.0, total);
  std::vector<Segment> out;
  const std::size_t n = segments_.size();
  // Walk at most two laps of segments for the wrapped range.
  for (std::size_t k = 0; k < 2 * n; ++k) {
    const std::size_t i = k % n;
    const double lap = (k / n) * total;
    const double a = offsets_[i] + lap, b = offsets_[i + 1] + lap;
    const double lo = std::max(a, s0), hi = std::min(b, s1);
    if (hi - lo <= eps) continue;
    const Segment& seg = segments_[i];
    if (lo - a <= eps && b - hi <= eps) {
      out.push_back(seg);
    } else {
      out.push_back(seg.sub(lo - a, hi - a));
    }
  }
  return CurveChain(std::move(out), false, material_);
}

std::vector<Vec2> CurveChain::sample(double spacing) const {
  std::vector<Vec2> pts;
  for (const Segment& seg : segments_) {
    const double len = seg.length();
    const int n = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int k = 0; k < n; ++k) pts.push_back(seg.point_at(len * k / n));
  }
  if (!closed_ && !segments_.empty()) pts.push_back(segments_.back().end());
  return pts;
}

BoundingBox CurveChain::bbox() const {
  BoundingBox box;
  for (const Segment& s : segments_) box.expand(s.bbox());
  return box;
}

std::vector<std::string> CurveChain::validate(double tol_join, double tol_geom) const {
  std::vector<std::string> issues;
  const std::size_t n = segments_.size();
  if (n == 0) {
    issues.emplace_back("chain has no segments");
    return issues;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& s = segments_[i];
    if (s.length() <= tol_geom)
      issues.push_back("segment " + std::to_string(i) + " is shorter than the geometric tolerance");
    if (s.is_arc() && std::abs(s.sweep()) >= kTwoPi - 1e-12)
      issues.push_back("segment " + std::to_string(i) + " is a full-circle arc");
  }
  const std::size_t joins = closed_ ? n : n - 1;
  for (std::size_t i = 0; i < joins; ++i) {
    const std::size_t j = (i + 1) % n;
    if (distance(segments_[i].end(), segments_[j].start()) > tol_join)
      issues.push_back("segments " + std::to_string(i) + " and " + std::to_string(j) +
                       " do not join");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool next = j == i + 1;
      const bool wrap = closed_ && i == 0 && j == n - 1;
      const IntersectionSet hit = intersect(segments_[i], segments_[j], tol_geom);
      if (!hit.overlaps.empty()) {
        issues.push_back("segments " + std::to_string(i) + " and " + std::to_string(j) +
                         " overlap");
        continue;
      }
      std::vector<Vec2> shared;
      if (next) shared.push_back(segments_[i].end());
      if (wrap) shared.push_back(segments_[i].start());
      for (const Vec2& p : hit.points) {
        bool allowed = false;
        for (const Vec2& q : shared)
          if (distance(p, q) <= std::max(tol_join, tol_geom) * 2.0) allowed = true;
        if (!allowed) {
          issues.push_back("segments " + std::to_string(i) + " and " + std::to_string(j) +
                           " intersect");
          break;
        }
      }
    }
  }
  return issues;
}

// ----------------------------------------------------------------- Region

bool Region::contains(Vec2 r) const {
  if (kind == Kind::Point) return false;
  return boundary.left_of(r);
}

RegionDistance distance_to_regions(const RegionSet& regions, Vec2 r, double tol) {
  RegionDistance out;
  out.distance = std::numeric_limits<double>::infinity();
  struct Cand {
    Vec2 p;
    std::size_t region;
    std::size_t segment;
    double d;
  };
  std::vector<Cand> cands;
  std::optional<Segment> degenerate;
  double degenerate_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < regions.size(); ++k) {
    const Region& reg = regions[k];
    if (reg.kind == Region::Kind::Point) {
      cands.push_back({reg.point, k, 0, distance(reg.point, r)});
      continue;
    }
    const ChainProjection pr = reg.boundary.project(r, tol);
    if (pr.distance > tol && reg.contains(r)) {
      out.inside = true;
      cands.push_back({r, k, 0, 0.0});
      continue;
    }
    for (const ProjectionPoint& p : pr.points) cands.push_back({p.point, k, p.segment, pr.distance});
    if (pr.degenerate_arc && pr.distance < degenerate_d) {
      degenerate_d = pr.distance;
      degenerate = pr.degenerate_arc;
    }
  }
  for (const Cand& c : cands) out.distance = std::min(out.distance, c.d);
  for (const Cand& c : cands) {
    if (c.d > out.distance + tol) continue;
    bool dup = false;
    for (const RegionFoot& f : out.feet)
      if (distance(f.point, c.p) <= tol) dup = true;
    if (!dup) out.feet.push_back({c.p, c.region, c.segment});
  }
  if (degenerate && degenerate_d <= out.distance + tol) out.degenerate_arc = degenerate;
  return out;
}

double distance_value(const RegionSet& regions, Vec2 r) {
  double best = std::numeric_limits<double>::infinity();
  for (const Region& reg : regions) {
    if (reg.kind == Region::Kind::Point) {
      best = std::min(best, distance(reg.point, r));
      continue;
    }
    const double d = reg.boundary.distance_to(r);
    if (d > 0.0 && reg.contains(r)) return 0.0;
    best = std::min(best, d);
  }
  return best;
}

BoundingBox bbox_of(const RegionSet& regions) {
  BoundingBox box;
  for (const Region& reg : regions) {
    if (reg.kind == Region::Kind::Point) {
      box.expand(reg.point);
    } else {
      box.expand(reg.boundary.bbox());
    }
  }
  return box;
}

}  // namespace fenceforge
