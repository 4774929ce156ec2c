#include "fenceforge/offset.hpp"

#include <algorithm>
#include <limits>

#include "fenceforge/errors.hpp"

namespace fenceforge {

namespace {

// Turns smaller than this are treated as smooth joins.
constexpr double kKinkAngle = 1e-8;

double turn_angle(Vec2 t_in, Vec2 t_out) { return std::atan2(cross(t_in, t_out), dot(t_in, t_out)); }

struct Piece {
  Segment seg;
  Provenance src;
};

// Endpoint clustering with union-find.
class Clusters {
 public:
  explicit Clusters(const std::vector<Vec2>& pts, double tol) : parent_(pts.size()) {
    for (std::size_t i = 0; i < pts.size(); ++i) parent_[i] = i;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (distance(pts[i], pts[j]) <= tol) unite(i, j);
    std::vector<std::size_t> label(pts.size(), std::numeric_limits<std::size_t>::max());
    id_.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::size_t r = find(i);
      if (label[r] == std::numeric_limits<std::size_t>::max()) {
        label[r] = centers_.size();
        centers_.push_back({0.0, 0.0});
        counts_.push_back(0);
      }
      id_[i] = label[r];
      centers_[id_[i]] += pts[i];
      ++counts_[id_[i]];
    }
    for (std::size_t k = 0; k < centers_.size(); ++k) centers_[k] = centers_[k] / counts_[k];
  }

  std::size_t id(std::size_t i) const { return id_[i]; }
  Vec2 center(std::size_t k) const { return centers_[k]; }
  std::size_t count() const { return centers_.size(); }

 private:
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  std::vector<std::size_t> parent_;
  std::vector<std::size_t> id_;
  std::vector<Vec2> centers_;
  std::vector<int> counts_;
};

// Re-anchors a piece so that it runs exactly between two node points.
Segment snap(const Segment& s, Vec2 from, Vec2 to) {
  if (s.is_line()) return Segment::line(from, to);
  return Segment::arc_between(s.center(), s.radius(), from, to, s.sweep() > 0.0);
}

bool same_support(const Piece& a, const Piece& b, double tol) {
  if (a.src.kind != b.src.kind || a.src.region != b.src.region || a.src.segment != b.src.segment)
    return false;
  if (a.seg.kind() != b.seg.kind()) return false;
  if (a.seg.is_line()) {
    const Vec2 u = normalized(a.seg.b() - a.seg.a());
    const Vec2 w = normalized(b.seg.b() - b.seg.a());
    return dot(u, w) > 0.0 && std::abs(cross(u, w)) < 1e-12 &&
           std::abs(cross(u, b.seg.a() - a.seg.a())) <= tol;
  }
  return distance(a.seg.center(), b.seg.center()) <= tol &&
         std::abs(a.seg.radius() - b.seg.radius()) <= tol && (a.seg.sweep() > 0.0) == (b.seg.sweep() > 0.0) &&
         std::abs(a.seg.sweep()) + std::abs(b.seg.sweep()) < kTwoPi - 1e-9;
}

Piece merge(const Piece& a, const Piece& b) {
  if (a.seg.is_line()) return {Segment::line(a.seg.start(), b.seg.end()), a.src};
  return {Segment::arc(a.seg.center(), a.seg.radius(), a.seg.start_angle(), a.seg.sweep() + b.seg.sweep()),
          a.src};
}

std::vector<Piece> merge_collinear(std::vector<Piece> loop, double tol) {
  std::vector<Piece> out;
  for (const Piece& p : loop) {
    if (!out.empty() && same_support(out.back(), p, tol)) {
      out.back() = merge(out.back(), p);
    } else {
      out.push_back(p);
    }
  }
  while (out.size() > 2 && same_support(out.back(), out.front(), tol)) {
    out.front() = merge(out.back(), out.front());
    out.pop_back();
  }
  return out;
}

}  // namespace

const char* to_string(PieceKind kind) {
  switch (kind) {
    case PieceKind::OffsetLine:
      return "offset-of-line";
    case PieceKind::OffsetArc:
      return "offset-of-arc";
    case PieceKind::Circinate:
      return "circinate";
  }
  return "unknown";
}

OffsetEnsemble build_ensemble(const RegionSet& regions, double d, double tol) {
  if (!(d > 0.0)) throw std::invalid_argument("offset distance must be positive");
  OffsetEnsemble ens;
  ens.d_star = d;
  for (std::size_t k = 0; k < regions.size(); ++k) {
    const Region& reg = regions[k];
    if (reg.kind == Region::Kind::Point) {
      for (int h = 0; h < 2; ++h) {
        EnsemblePiece piece;
        piece.source = {PieceKind::Circinate, k, 0, 0.0, reg.point};
        piece.segment = Segment::arc(reg.point, d, h * kPi, kPi);
        ens.pieces.push_back(piece);
      }
      continue;
    }
    const CurveChain& chain = reg.boundary;
    const std::size_t n = chain.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Segment& s = chain[i];
      // Convex kink at the start of segment i: circinate arc around the vertex.
      const Segment& prev = chain[(i + n - 1) % n];
      const Vec2 t_in = prev.end_tangent(), t_out = s.start_tangent();
      const double turn = turn_angle(t_in, t_out);
      if (turn > kKinkAngle) {
        const Vec2 v = s.start();
        EnsemblePiece piece;
        piece.source = {PieceKind::Circinate, k, i, 0.0, v};
        piece.segment = Segment::arc(v, d, angle_of(-perp(t_in)), turn);
        ens.pieces.push_back(piece);
      }
      EnsemblePiece piece;
      piece.source.region = k;
      piece.source.segment = i;
      piece.source.base_curvature = s.curvature();
      if (s.is_line()) {
        piece.source.kind = PieceKind::OffsetLine;
        const Vec2 shift = -perp(s.start_tangent()) * d;
        piece.segment = Segment::line(s.a() + shift, s.b() + shift);
        ens.pieces.push_back(piece);
        continue;
      }
      piece.source.kind = PieceKind::OffsetArc;
      const double rho = s.radius();
      if (s.sweep() > 0.0) {
        piece.segment = Segment::arc(s.center(), rho + d, s.start_angle(), s.sweep());
      } else if (std::abs(rho - d) <= tol) {
        piece.degenerate = true;
        piece.degenerate_point = s.center();
      } else if (rho > d) {
        piece.segment = Segment::arc(s.center(), rho - d, s.start_angle(), s.sweep());
      } else {
        continue;  // inverted
      }
      ens.pieces.push_back(piece);
    }
  }
  return ens;
}

OffsetEnsemble build_ensemble(const Scene& scene, double d_star) {
  return build_ensemble(scene.regions(), d_star, scene.tol());
}

std::vector<BoundaryLoop> boundary_loops(const RegionSet& regions, double d, double tol) {
  const OffsetEnsemble ens = build_ensemble(regions, d, tol);
  std::vector<Piece> raw;
  for (const EnsemblePiece& p : ens.pieces)
    if (p.segment) raw.push_back({*p.segment, p.source});

  const double split_tol = 10.0 * tol;
  const double node_tol = 1e3 * tol;
  const double keep_tol = 1e2 * tol;
  const double probe = 1e4 * tol;

  // Split every piece at its crossings with the others.
  std::vector<std::vector<double>> cuts(raw.size());
  auto add_cut = [&](std::size_t i, Vec2 p) {
    const double s = raw[i].seg.param_of(p);
    if (s > split_tol && s < raw[i].seg.length() - split_tol) cuts[i].push_back(s);
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      const IntersectionSet hit = intersect(raw[i].seg, raw[j].seg, tol);
      for (const Vec2& p : hit.points) {
        add_cut(i, p);
        add_cut(j, p);
      }
      for (const Segment& o : hit.overlaps) {
        for (const Vec2& p : {o.start(), o.end()}) {
          add_cut(i, p);
          add_cut(j, p);
        }
      }
    }
  }
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::vector<double> c = cuts[i];
    c.push_back(0.0);
    c.push_back(raw[i].seg.length());
    std::sort(c.begin(), c.end());
    std::vector<double> u;
    for (double s : c)
      if (u.empty() || s - u.back() > split_tol) u.push_back(s);
    u.back() = raw[i].seg.length();
    for (std::size_t k = 0; k + 1 < u.size(); ++k) {
      if (u[k + 1] - u[k] <= node_tol) continue;
      const bool whole = u.size() == 2;
      pieces.push_back({whole ? raw[i].seg : raw[i].seg.sub(u[k], u[k + 1]), raw[i].src});
    }
  }

  // Keep the pieces that bound the d-neighbourhood.
  std::vector<Piece> kept;
  for (const Piece& p : pieces) {
    const Vec2 mid = p.seg.midpoint();
    if (distance_value(regions, mid) < d - keep_tol) continue;
    const Vec2 outward = -p.seg.normal_at(0.5 * p.seg.length());
    if (distance_value(regions, mid + outward * probe) <= d + 0.5 * probe) continue;
    bool dup = false;
    for (const Piece& q : kept) {
      if (distance(q.seg.start(), p.seg.start()) <= node_tol && distance(q.seg.end(), p.seg.end()) <= node_tol &&
          distance(q.seg.midpoint(), mid) <= node_tol)
        dup = true;
    }
    if (!dup) kept.push_back(p);
  }

  // Assemble loops through clustered endpoints.
  std::vector<Vec2> ends;
  for (const Piece& p : kept) {
    ends.push_back(p.seg.start());
    ends.push_back(p.seg.end());
  }
  const Clusters nodes(ends, node_tol);
  std::vector<std::vector<std::size_t>> outgoing(nodes.count());
  for (std::size_t i = 0; i < kept.size(); ++i) outgoing[nodes.id(2 * i)].push_back(i);

  std::vector<bool> used(kept.size(), false);
  std::vector<BoundaryLoop> loops;
  for (std::size_t first = 0; first < kept.size(); ++first) {
    if (used[first]) continue;
    std::vector<std::size_t> order{first};
    used[first] = true;
    const std::size_t start_node = nodes.id(2 * first);
    std::size_t node = nodes.id(2 * first + 1);
    while (node != start_node) {
      const std::size_t cur = order.back();
      std::size_t best = kept.size();
      double best_turn = std::numeric_limits<double>::infinity();
      for (std::size_t cand : outgoing[node]) {
        if (used[cand]) continue;
        const double turn = turn_angle(kept[cur].seg.end_tangent(), kept[cand].seg.start_tangent());
        if (turn < best_turn) {
          best_turn = turn;
          best = cand;
        }
      }
      if (best == kept.size())
        throw ConsistencyFailure("offset boundary does not close into a loop");
      used[best] = true;
      order.push_back(best);
      node = nodes.id(2 * best + 1);
    }
    std::vector<Piece> loop;
    for (std::size_t idx : order) {
      const Vec2 a = nodes.center(nodes.id(2 * idx));
      const Vec2 b = nodes.center(nodes.id(2 * idx + 1));
      if (distance(a, b) <= node_tol) continue;
      loop.push_back({snap(kept[idx].seg, a, b), kept[idx].src});
    }
    loop = merge_collinear(std::move(loop), node_tol);
    if (loop.empty()) continue;
    BoundaryLoop out;
    std::vector<Segment> segs;
    for (const Piece& p : loop) {
      segs.push_back(p.seg);
      out.provenance.push_back(p.src);
    }
    out.chain = CurveChain(std::move(segs), true);
    loops.push_back(std::move(out));
  }
  return loops;
}

Vec2 Perimeter::foot_at(double s) const {
  const JointFrames f = chain.frame_at(s);
  return chain.point_at(s) + f.before.normal * d0;
}

bool Perimeter::in_exterior(Vec2 r, double tol) const {
  return chain.distance_to(r) <= tol || !chain.left_of(r);
}

Perimeter extract_perimeter(const RegionSet& regions, double d0, double tol, std::optional<Vec2> hint) {
  std::vector<BoundaryLoop> loops = boundary_loops(regions, d0, tol);
  std::vector<Vec2> reps;
  for (const Region& reg : regions)
    reps.push_back(reg.kind == Region::Kind::Point ? reg.point : reg.boundary.point_at(0.5 * reg.boundary[0].length()));
  std::vector<std::size_t> qualifying;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    bool all_left = true;
    for (const Vec2& r : reps)
      if (!loops[i].chain.left_of(r)) all_left = false;
    if (all_left) qualifying.push_back(i);
  }
  if (qualifying.empty()) {
    throw AssumptionViolation(
        "no perimeter loop keeps every obstacle on one side (the d0-neighbourhood boundary has " +
        std::to_string(loops.size()) + " loop(s))");
  }
  std::size_t pick = qualifying.front();
  if (qualifying.size() > 1) {
    std::vector<std::size_t> filtered;
    if (hint) {
      for (std::size_t i : qualifying)
        if (!loops[i].chain.left_of(*hint)) filtered.push_back(i);
    }
    if (filtered.size() != 1) {
      filtered.clear();
      for (std::size_t i : qualifying)
        if (loops[i].chain.signed_area() > 0.0) filtered.push_back(i);
    }
    if (filtered.size() != 1) throw AssumptionViolation("perimeter loop is ambiguous");
    pick = filtered.front();
  }
  Perimeter p;
  p.d0 = d0;
  p.chain = CurveChain(loops[pick].chain.segments(), true, MaterialSide::Left);
  p.provenance = loops[pick].provenance;
  return p;
}

Perimeter extract_perimeter(const Scene& scene) {
  return extract_perimeter(scene.regions(), scene.params.d0, scene.tol(), scene.r_in);
}

}  // namespace fenceforge
