#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fenceforge/geometry.hpp"
#include "fenceforge/offset.hpp"
#include "fenceforge/scene.hpp"

namespace fenceforge {

/// Q(R): exterior points farther than R from the perimeter. Each component
/// is simply connected and bounded by one loop that keeps D on its left and
/// the component on its right.
struct ErosionSet {
  double R = 0.0;
  std::vector<CurveChain> components;
  std::vector<std::vector<Provenance>> provenance;
  /// The component whose boundary runs counterclockwise, i.e. the one
  /// extending to infinity.
  std::optional<std::size_t> unbounded;

  /// Distance from r to the closure of component k (0 inside).
  double distance_to_component(std::size_t k, Vec2 r) const;
};

/// Builds the boundary of Q(R) twice, as the trimmed (d0 + R)-neighbourhood
/// of D and as the R-offset of P into the exterior, and checks the two agree.
/// Throws EmptyErosion when Q(R) is empty, AssumptionViolation when d0 + R is
/// bizarre, ConsistencyFailure on disagreement.
ErosionSet compute_erosion(const Scene& scene, const Perimeter& perimeter, double R);

enum class FenceSegmentType { OnPerimeter, Gate };

struct FenceProvenance {
  FenceSegmentType type = FenceSegmentType::OnPerimeter;
  /// Perimeter segment index for OnPerimeter, door stone index for Gate.
  std::size_t index = 0;
};

/// A touching R-disc with at least two contacts on P.
struct DoorStone {
  Vec2 center;
  std::vector<Vec2> contacts;
  /// Gate arcs of radius R, oriented like the fence (clockwise).
  std::vector<Segment> gates;
  /// Per gate: the perimeter sub-chain sealed off behind it.
  std::vector<CurveChain> caves;
  /// Angular measure of the shortest disc arc holding every contact.
  double main_angle = 0.0;
};

struct Fence {
  double R = 0.0;
  std::size_t component = 0;
  /// D on the left, patch on the right.
  CurveChain contact_path;
  std::vector<FenceProvenance> provenance;
  std::vector<DoorStone> door_stones;

  /// True when r lies in the patch: the side of the loop without obstacles.
  bool patch_contains(Vec2 r) const;
};

Fence build_fence(const Scene& scene, const Perimeter& perimeter, const ErosionSet& erosion,
                  std::size_t component);

struct LoopReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Curvature bounds of an (R_minus, R_plus)-loop: -1/R_minus <= kappa on
/// concave parts, kappa <= 1/R_plus on convex parts, both relaxed by
/// tol_rel; tangent continuity at joints within `angle_tol` radians.
LoopReport validate_loop(const CurveChain& chain, double r_minus, double r_plus,
                         double tol_rel = 1e-9, double angle_tol = 1e-8);

/// Index of the unique fence whose patch contains r_in.
std::size_t select_initial_fence(const Scene& scene, const std::vector<Fence>& fences);

/// Builds every fence at radius R.
std::vector<Fence> build_all_fences(const Scene& scene, const Perimeter& perimeter, double R);

/// The fence at radius R whose patch contains r_in.
Fence initial_fence(const Scene& scene, const Perimeter& perimeter, double R);

struct NestingReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::string detail;
  bool ok() const { return violations == 0; }
};

/// Checks patch(fence at R) lies inside patch(fence at R_star) for
/// R >= R_star by winding tests on `samples` fence points and as many
/// interior patch points.
NestingReport check_nesting(const Scene& scene, const Perimeter& perimeter, double R,
                            double R_star, std::size_t samples = 1000);

}  // namespace fenceforge
