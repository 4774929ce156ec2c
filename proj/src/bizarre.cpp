#include <algorithm>
#include <functional>

#include <fmt/format.h>

#include "fenceforge/offset.hpp"

namespace fenceforge {

namespace {

constexpr double kKinkAngle = 1e-8;
constexpr double kParallel = 1e-12;
// Bridges sampled along a one-parameter family.
constexpr int kFamilySamples = 33;

struct Feature {
  enum class Kind { Point, Line, Arc };
  Kind kind = Kind::Point;
  Vec2 p;
  Segment seg = Segment::line({0, 0}, {1, 0});
};

std::vector<Feature> features_of(const RegionSet& regions) {
  std::vector<Feature> out;
  for (const Region& reg : regions) {
    if (reg.kind == Region::Kind::Point) {
      out.push_back({Feature::Kind::Point, reg.point});
      continue;
    }
    const CurveChain& c = reg.boundary;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Segment& s = c[i];
      const Segment& prev = c[(i + n - 1) % n];
      const Vec2 t_in = prev.end_tangent(), t_out = s.start_tangent();
      if (std::abs(std::atan2(cross(t_in, t_out), dot(t_in, t_out))) > kKinkAngle)
        out.push_back({Feature::Kind::Point, s.start()});
      out.push_back({s.is_line() ? Feature::Kind::Line : Feature::Kind::Arc, {}, s});
    }
  }
  return out;
}

// Normal pointing into the material at a point of a smooth feature.
Vec2 material_normal(const Feature& f, Vec2 at) {
  return f.seg.normal_at(f.seg.param_of(at));
}

bool on_feature(const Feature& f, Vec2 q, double tol) {
  if (f.kind == Feature::Kind::Point) return distance(f.p, q) <= tol;
  return f.seg.closest_point(q).dist <= tol;
}

// A bridge must leave smooth boundary points into free space.
bool leaves_freely(const Feature& f, Vec2 at, Vec2 other) {
  if (f.kind == Feature::Kind::Point) return true;
  return dot(other - at, material_normal(f, at)) < 0.0;
}

// The open segment (a, b) avoids D.
bool is_free(const RegionSet& regions, Vec2 a, Vec2 b, double tol) {
  const double len = distance(a, b);
  const double end_tol = 1e3 * tol;
  if (len <= 2.0 * end_tol) return false;
  const Segment bridge = Segment::line(a, b);
  for (const Region& reg : regions) {
    if (reg.kind == Region::Kind::Point) {
      const Segment::Foot f = bridge.closest_point(reg.point);
      if (f.dist <= tol && f.s > end_tol && f.s < len - end_tol) return false;
      continue;
    }
    for (const Segment& s : reg.boundary.segments()) {
      const IntersectionSet hit = intersect(bridge, s, tol);
      if (!hit.overlaps.empty()) return false;
      for (const Vec2& p : hit.points)
        if (distance(p, a) > end_tol && distance(p, b) > end_tol) return false;
    }
  }
  const Vec2 mid = (a + b) * 0.5;
  for (const Region& reg : regions)
    if (reg.contains(mid)) return false;
  return true;
}

struct Enumerator {
  const RegionSet& regions;
  double tol;
  std::vector<BizarreCandidate> out;

  bool valid(const Feature& fa, Vec2 a, const Feature& fb, Vec2 b) const {
    if (!on_feature(fa, a, 10.0 * tol) || !on_feature(fb, b, 10.0 * tol)) return false;
    if (!leaves_freely(fa, a, b) || !leaves_freely(fb, b, a)) return false;
    return is_free(regions, a, b, tol);
  }

  void bridge(const Feature& fa, Vec2 a, const Feature& fb, Vec2 b, const char* what) {
    if (!valid(fa, a, fb, b)) return;
    out.push_back({0.5 * distance(a, b), BizarreCase::III, fmt::format("bridge ({})", what), {a, b}, false});
  }

  // A continuum of bridges whose midpoints sit at distance L/2 from D is an
  // equidistant locus; otherwise the family only contributes single bridges.
  void family(const Feature& fa, const Feature& fb, const std::function<std::pair<Vec2, Vec2>(double)>& at,
              const char* what) {
    std::optional<BizarreCandidate> single;
    int equidistant = 0;
    std::pair<Vec2, Vec2> witness;
    for (int k = 0; k < kFamilySamples; ++k) {
      const auto [a, b] = at(static_cast<double>(k) / (kFamilySamples - 1));
      if (!valid(fa, a, fb, b)) continue;
      const double half = 0.5 * distance(a, b);
      if (std::abs(distance_value(regions, (a + b) * 0.5) - half) <= 1e3 * tol) {
        if (equidistant++ == 0) witness = {a, b};
      } else if (!single) {
        single = BizarreCandidate{half, BizarreCase::III, fmt::format("bridge ({})", what), {a, b}, false};
      }
    }
    if (equidistant >= 2) {
      out.push_back({0.5 * distance(witness.first, witness.second), BizarreCase::II,
                     fmt::format("equidistant family of bridges ({})", what),
                     {witness.first, witness.second}, false});
    } else if (single) {
      out.push_back(*single);
    }
  }

  void point_point(const Feature& a, const Feature& b) {
    bridge(a, a.p, b, b.p, "point-point");
  }

  void point_line(const Feature& pf, const Feature& lf) {
    const Vec2 a = lf.seg.a();
    const Vec2 u = normalized(lf.seg.b() - a);
    const double t = dot(pf.p - a, u);
    if (t < -tol || t > lf.seg.length() + tol) return;
    bridge(lf, a + u * std::clamp(t, 0.0, lf.seg.length()), pf, pf.p, "point-line");
  }

  void point_arc(const Feature& pf, const Feature& af) {
    const Vec2 c = af.seg.center();
    const double rho = af.seg.radius();
    if (distance(pf.p, c) <= tol) {
      const Segment& arc = af.seg;
      family(af, pf, [&](double u) { return std::pair{arc.point_at(u * arc.length()), pf.p}; },
             "point at arc center");
      return;
    }
    const Vec2 u = normalized(pf.p - c);
    for (double sgn : {1.0, -1.0}) bridge(af, c + u * (sgn * rho), pf, pf.p, "point-arc");
  }

  void line_line(const Feature& f1, const Feature& f2) {
    const Vec2 a1 = f1.seg.a(), a2 = f2.seg.a();
    const Vec2 u1 = normalized(f1.seg.b() - a1), u2 = normalized(f2.seg.b() - a2);
    if (std::abs(cross(u1, u2)) > kParallel) return;
    const Vec2 free1 = -perp(u1);
    const double gap = dot(a2 - a1, free1);
    if (gap <= tol) return;
    double t0 = dot(a2 - a1, u1), t1 = dot(f2.seg.b() - a1, u1);
    if (t0 > t1) std::swap(t0, t1);
    const double lo = std::max(0.0, t0), hi = std::min(f1.seg.length(), t1);
    if (hi < lo - tol) return;
    if (hi - lo <= tol) {
      const Vec2 a = a1 + u1 * (0.5 * (lo + hi));
      bridge(f1, a, f2, a + free1 * gap, "parallel facing lines");
      return;
    }
    family(f1, f2, [&](double u) {
      const Vec2 a = a1 + u1 * (lo + u * (hi - lo));
      return std::pair{a, a + free1 * gap};
    }, "parallel facing lines");
  }

  void line_arc(const Feature& lf, const Feature& af) {
    const Vec2 a = lf.seg.a();
    const Vec2 u = normalized(lf.seg.b() - a);
    const Vec2 c = af.seg.center();
    const double t = dot(c - a, u);
    if (t < -tol || t > lf.seg.length() + tol) return;
    const Vec2 foot = a + u * std::clamp(t, 0.0, lf.seg.length());
    const Vec2 nrm = perp(u);
    for (double sgn : {1.0, -1.0}) bridge(lf, foot, af, c + nrm * (sgn * af.seg.radius()), "line-arc");
  }

  // Directions (angles) common to two angular intervals, offset by `shift`.
  static std::vector<std::pair<double, double>> common_directions(const Segment& s1, const Segment& s2,
                                                                  double shift) {
    auto ccw = [](const Segment& s) {
      return s.sweep() >= 0.0 ? std::pair{s.start_angle(), s.sweep()}
                              : std::pair{s.start_angle() + s.sweep(), -s.sweep()};
    };
    auto [lo1, w1] = ccw(s1);
    auto [lo2, w2] = ccw(s2);
    lo2 += shift;
    const double b0 = lo1 + wrap_positive(lo2 - lo1);
    std::vector<std::pair<double, double>> out;
    if (b0 <= lo1 + w1) out.emplace_back(b0, std::min(b0 + w2, lo1 + w1));
    if (b0 + w2 - kTwoPi >= lo1) out.emplace_back(lo1, std::min(lo1 + w1, b0 + w2 - kTwoPi));
    return out;
  }

  void arc_arc(const Feature& f1, const Feature& f2, bool same) {
    const Vec2 c1 = f1.seg.center(), c2 = f2.seg.center();
    const double r1 = f1.seg.radius(), r2 = f2.seg.radius();
    if (distance(c1, c2) <= tol) {
      // Concentric: every common normal direction gives a bridge.
      for (double shift : {0.0, kPi}) {
        if (shift == 0.0 && (same || std::abs(r1 - r2) <= tol)) continue;
        for (auto [lo, hi] : common_directions(f1.seg, f2.seg, shift)) {
          const double sgn = shift == 0.0 ? 1.0 : -1.0;
          auto at = [&, lo = lo, hi = hi](double t) {
            const Vec2 u = unit_from_angle(lo + t * (hi - lo));
            return std::pair{c1 + u * r1, c1 + u * (sgn * r2)};
          };
          if (hi - lo <= tol / std::max(r1, r2)) {
            const auto [a, b] = at(0.5);
            bridge(f1, a, f2, b, "concentric arcs");
          } else {
            family(f1, f2, at, "concentric arcs");
          }
        }
      }
      return;
    }
    const Vec2 u = normalized(c2 - c1);
    for (double s1 : {1.0, -1.0})
      for (double s2 : {1.0, -1.0}) bridge(f1, c1 + u * (s1 * r1), f2, c2 + u * (s2 * r2), "arc-arc");
  }

  void pair(const Feature& a, const Feature& b, bool same) {
    using K = Feature::Kind;
    if (a.kind == K::Point && b.kind == K::Point) {
      if (!same) point_point(a, b);
    } else if (a.kind == K::Point && b.kind == K::Line) {
      point_line(a, b);
    } else if (a.kind == K::Line && b.kind == K::Point) {
      point_line(b, a);
    } else if (a.kind == K::Point && b.kind == K::Arc) {
      point_arc(a, b);
    } else if (a.kind == K::Arc && b.kind == K::Point) {
      point_arc(b, a);
    } else if (a.kind == K::Line && b.kind == K::Line) {
      if (!same) line_line(a, b);
    } else if (a.kind == K::Line && b.kind == K::Arc) {
      line_arc(a, b);
    } else if (a.kind == K::Arc && b.kind == K::Line) {
      line_arc(b, a);
    } else {
      arc_arc(a, b, same);
    }
  }
};

}  // namespace

const char* case_name(BizarreCase c) {
  switch (c) {
    case BizarreCase::I: return "I";
    case BizarreCase::II: return "II";
    default: return "III";
  }
}

std::vector<BizarreCandidate> enumerate_bizarre(const RegionSet& regions, double tol) {
  const std::vector<Feature> feats = features_of(regions);
  Enumerator e{regions, tol, {}};
  for (const Feature& f : feats) {
    if (f.kind != Feature::Kind::Arc || f.seg.sweep() > 0.0) continue;
    const double rho = f.seg.radius();
    e.out.push_back({rho, BizarreCase::I, "concave arc radius", {f.seg.center()}, false});
    e.out.push_back({0.5 * rho, BizarreCase::II, "half radius of a concave arc", {f.seg.center()}, true});
  }
  for (std::size_t i = 0; i < feats.size(); ++i)
    for (std::size_t j = i; j < feats.size(); ++j) e.pair(feats[i], feats[j], i == j);

  std::vector<BizarreCandidate>& out = e.out;
  std::sort(out.begin(), out.end(), [](const BizarreCandidate& a, const BizarreCandidate& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.which < b.which;
  });
  std::vector<BizarreCandidate> unique;
  for (const BizarreCandidate& c : out) {
    bool dup = false;
    for (const BizarreCandidate& u : unique)
      if (u.which == c.which && u.label == c.label && std::abs(u.value - c.value) <= tol) dup = true;
    if (!dup) unique.push_back(c);
  }
  return unique;
}

BizarreVerdict is_bizarre(const std::vector<BizarreCandidate>& enumeration, double d_star, double tol) {
  BizarreVerdict v;
  v.d_star = d_star;
  for (const BizarreCandidate& c : enumeration)
    if (std::abs(c.value - d_star) <= tol) v.matches.push_back(c);
  return v;
}

BizarreReport enumerate_bizarre(const Scene& scene) {
  BizarreReport rep;
  rep.enumeration = enumerate_bizarre(scene.regions(), scene.tol());
  const SceneParams& p = scene.params;
  rep.tested = {p.d0, p.d0 + p.r_op, p.d0 + p.r_fence};
  for (double d : rep.tested) rep.verdicts.push_back(is_bizarre(rep.enumeration, d, scene.tol()));
  return rep;
}

BizarreVerdict is_bizarre(const Scene& scene, double d_star) {
  return is_bizarre(enumerate_bizarre(scene.regions(), scene.tol()), d_star, scene.tol());
}

}  // namespace fenceforge
