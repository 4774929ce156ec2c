#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fenceforge/geometry.hpp"
#include "fenceforge/scene.hpp"

namespace fenceforge {

enum class PieceKind { OffsetLine, OffsetArc, Circinate };

const char* to_string(PieceKind kind);

/// Which part of the input regions generated an offset piece.
struct Provenance {
  PieceKind kind = PieceKind::OffsetLine;
  std::size_t region = 0;
  /// Offset pieces: the source segment. Circinate pieces born at a kink:
  /// the segment that starts at the kink. Unused for point regions.
  std::size_t segment = 0;
  /// Signed curvature of the source segment (0 for circinate pieces).
  double base_curvature = 0.0;
  /// Circinate pieces: the birth point.
  Vec2 birth;
};

struct EnsemblePiece {
  Provenance source;
  /// Absent for collapsed pieces.
  std::optional<Segment> segment;
  /// A concave arc of radius exactly d*: the piece collapses to its center.
  bool degenerate = false;
  Vec2 degenerate_point;
};

/// The d*-ensemble: every boundary piece moved a distance d* to its right
/// (away from the material), plus circinate arcs of radius d* around point
/// regions and convex kinks. Concave arcs of radius below d* invert and are
/// dropped; they never contribute to a boundary of the d*-neighbourhood.
struct OffsetEnsemble {
  double d_star = 0.0;
  std::vector<EnsemblePiece> pieces;
};

OffsetEnsemble build_ensemble(const RegionSet& regions, double d_star, double tol);
OffsetEnsemble build_ensemble(const Scene& scene, double d_star);

/// A closed loop assembled from trimmed ensemble pieces, with the material
/// (the d-neighbourhood) on its left.
struct BoundaryLoop {
  CurveChain chain;
  std::vector<Provenance> provenance;  // per chain segment
};

/// All loops forming the boundary of the d-neighbourhood of the regions.
/// Throws ConsistencyFailure if the trimmed pieces do not close into loops.
std::vector<BoundaryLoop> boundary_loops(const RegionSet& regions, double d, double tol);

/// The outer perimeter: the loop of the d0-neighbourhood boundary that keeps
/// every obstacle on its left. The exterior is on its right.
struct Perimeter {
  double d0 = 0.0;
  CurveChain chain;
  std::vector<Provenance> provenance;

  /// Foot of the normal leg at chain coordinate s: the boundary point of D
  /// the perimeter point was offset from.
  Vec2 foot_at(double s) const;
  /// True when r is on P or on its exterior side.
  bool in_exterior(Vec2 r, double tol) const;
};

/// Throws AssumptionViolation when no loop has all obstacles on one side.
Perimeter extract_perimeter(const Scene& scene);
Perimeter extract_perimeter(const RegionSet& regions, double d0, double tol,
                            std::optional<Vec2> hint = std::nullopt);

enum class BizarreCase { I = 1, II = 2, III = 3 };

const char* case_name(BizarreCase c);

struct BizarreCandidate {
  double value = 0.0;
  BizarreCase which = BizarreCase::III;
  std::string label;
  std::vector<Vec2> witness;
  /// Listed without a constructive witness of the degeneracy.
  bool conservative = false;
};

struct BizarreVerdict {
  double d_star = 0.0;
  std::vector<BizarreCandidate> matches;  // empty when d_star is not bizarre

  bool ok() const { return matches.empty(); }
};

struct BizarreReport {
  std::vector<double> tested;
  std::vector<BizarreVerdict> verdicts;
  /// Finite candidate set, sorted by value.
  std::vector<BizarreCandidate> enumeration;
};

std::vector<BizarreCandidate> enumerate_bizarre(const RegionSet& regions, double tol);
BizarreReport enumerate_bizarre(const Scene& scene);
BizarreVerdict is_bizarre(const Scene& scene, double d_star);
BizarreVerdict is_bizarre(const std::vector<BizarreCandidate>& enumeration, double d_star,
                          double tol);

}  // namespace fenceforge
