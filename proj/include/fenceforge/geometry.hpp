#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fenceforge {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Thrown when a geometric object is constructed from invalid data.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
/// Counterclockwise rotation by a right angle.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline double angle_of(Vec2 a) { return std::atan2(a.y, a.x); }
inline Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }
inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);
/// Wraps an angle into [0, 2pi).
double wrap_positive(double a);

struct BoundingBox {
  Vec2 lo{INFINITY, INFINITY};
  Vec2 hi{-INFINITY, -INFINITY};

  void expand(Vec2 p);
  void expand(const BoundingBox& o);
  BoundingBox padded(double m) const { return {{lo.x - m, lo.y - m}, {hi.x + m, hi.y + m}}; }
  bool empty() const { return lo.x > hi.x; }
  double diagonal() const { return empty() ? 0.0 : norm(hi - lo); }
};

/// Right-handed Frenet frame: normal is the tangent rotated counterclockwise,
/// and d(tangent)/ds = curvature * normal.
struct FrenetFrame {
  Vec2 tangent;
  Vec2 normal;
  double curvature = 0.0;
};

enum class SegmentKind { Line, Arc };

/// Oriented line segment or circular arc, parameterized by arc length.
class Segment {
 public:
  static Segment line(Vec2 a, Vec2 b);
  /// Positive sweep runs counterclockwise.
  static Segment arc(Vec2 center, double radius, double start_angle, double sweep);
  /// Arc on the given circle from `from` to `to` (both snapped onto the
  /// circle) running counterclockwise if `ccw`.
  static Segment arc_between(Vec2 center, double radius, Vec2 from, Vec2 to, bool ccw);

  SegmentKind kind() const { return kind_; }
  bool is_line() const { return kind_ == SegmentKind::Line; }
  bool is_arc() const { return kind_ == SegmentKind::Arc; }

  // Line data.
  Vec2 a() const { return a_; }
  Vec2 b() const { return b_; }
  // Arc data.
  Vec2 center() const { return center_; }
  double radius() const { return radius_; }
  double start_angle() const { return start_angle_; }
  double sweep() const { return sweep_; }

  Vec2 start() const;
  Vec2 end() const;
  double length() const;
  /// Signed curvature: 0 for lines, +1/r for counterclockwise arcs, -1/r otherwise.
  double curvature() const;

  Vec2 point_at(double s) const;
  Vec2 tangent_at(double s) const;
  Vec2 normal_at(double s) const { return perp(tangent_at(s)); }
  FrenetFrame frame_at(double s) const;
  Vec2 start_tangent() const { return tangent_at(0.0); }
  Vec2 end_tangent() const { return tangent_at(length()); }
  Vec2 midpoint() const { return point_at(0.5 * length()); }

  Segment reversed() const;
  /// Sub-segment between arc-length coordinates s0 < s1.
  Segment sub(double s0, double s1) const;

  /// Closest point on the segment; `s` is its arc-length coordinate.
  struct Foot {
    Vec2 point;
    double s = 0.0;
    double dist = 0.0;
  };
  Foot closest_point(Vec2 r) const;
  /// Arc-length coordinate of the point of the segment closest to `p`.
  double param_of(Vec2 p) const { return closest_point(p).s; }
  /// For arcs: whether the direction angle lies inside the swept range,
  /// with angular slack `eps`.
  bool arc_contains_angle(double angle, double eps) const;

  BoundingBox bbox() const;

 private:
  Segment() = default;

  SegmentKind kind_ = SegmentKind::Line;
  Vec2 a_, b_;
  Vec2 center_;
  double radius_ = 0.0;
  double start_angle_ = 0.0;
  double sweep_ = 0.0;
};

/// Result of intersecting two segments: finitely many points, or a shared
/// sub-segment when both lie on one line or one circle.
struct IntersectionSet {
  std::vector<Vec2> points;
  /// Shared sub-segments, oriented like the first segment.
  std::vector<Segment> overlaps;

  bool empty() const { return points.empty() && overlaps.empty(); }
};

IntersectionSet intersect(const Segment& s1, const Segment& s2, double tol);

enum class Side { Inside, Outside, OnBoundary };

/// Which side of a chain the material (obstacle) occupies.
enum class MaterialSide { Left, Right };

struct ProjectionPoint {
  Vec2 point;
  std::size_t segment = 0;
  double s = 0.0;  // chain arc-length coordinate
};

struct ChainProjection {
  double distance = 0.0;
  std::vector<ProjectionPoint> points;
  /// Set when the query is the center of an arc of the chain at minimal
  /// distance: every point of that arc is a projection.
  std::optional<Segment> degenerate_arc;
};

struct JointFrames {
  FrenetFrame before;
  FrenetFrame after;
  bool at_joint = false;
};

/// Cyclic (or open) concatenation of segments.
class CurveChain {
 public:
  CurveChain() = default;
  CurveChain(std::vector<Segment> segments, bool closed,
             MaterialSide material = MaterialSide::Left);

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }
  const Segment& operator[](std::size_t i) const { return segments_[i]; }
  bool closed() const { return closed_; }
  MaterialSide material() const { return material_; }

  double length() const { return offsets_.empty() ? 0.0 : offsets_.back(); }
  /// Arc-length coordinate where segment `i` starts.
  double segment_offset(std::size_t i) const { return offsets_[i]; }
  /// Segment index and local coordinate for chain coordinate `s`.
  std::pair<std::size_t, double> locate(double s) const;
  Vec2 point_at(double s) const;
  /// Frames at `s`; at a concatenation point both one-sided frames.
  JointFrames frame_at(double s) const;

  double signed_area() const;
  /// Winding number of the closed chain around `r` (assumes `r` off the chain).
  int winding_number(Vec2 r) const;
  Side side(Vec2 r, double tol) const;
  /// True when `r` lies strictly to the left of the closed chain
  /// (the side the traversal keeps on its left hand).
  bool left_of(Vec2 r) const;

  ChainProjection project(Vec2 r, double tol) const;
  double distance_to(Vec2 r) const;

  CurveChain reversed() const;
  /// Sub-chain running forward from s0 to s1, wrapping around for closed chains.
  CurveChain sub_chain(double s0, double s1) const;
  /// Evenly spaced sample points (at most `spacing` apart), including all joints.
  std::vector<Vec2> sample(double spacing) const;
  BoundingBox bbox() const;

  /// Checks the chain invariants; returns human-readable issues.
  std::vector<std::string> validate(double tol_join, double tol_geom) const;

 private:
  std::vector<Segment> segments_;
  std::vector<double> offsets_;
  bool closed_ = false;
  MaterialSide material_ = MaterialSide::Left;
};

/// A solid planar region: a point, or the left side of a closed chain.
struct Region {
  enum class Kind { Point, Loop };
  Kind kind = Kind::Point;
  Vec2 point;
  CurveChain boundary;

  static Region at_point(Vec2 p) { return {Kind::Point, p, {}}; }
  static Region left_of(CurveChain loop) { return {Kind::Loop, {}, std::move(loop)}; }
  bool contains(Vec2 r) const;
};

using RegionSet = std::vector<Region>;

/// Where a projection onto a region set landed.
struct RegionFoot {
  Vec2 point;
  std::size_t region = 0;
  std::size_t segment = 0;  // meaningful for loops only
};

struct RegionDistance {
  double distance = 0.0;
  std::vector<RegionFoot> feet;
  std::optional<Segment> degenerate_arc;
  bool inside = false;
};

/// Distance from `r` to the union of the regions, with every minimizer
/// within `tol` of the minimum.
RegionDistance distance_to_regions(const RegionSet& regions, Vec2 r, double tol);
double distance_value(const RegionSet& regions, Vec2 r);

BoundingBox bbox_of(const RegionSet& regions);

}  // namespace fenceforge
