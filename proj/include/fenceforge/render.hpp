#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fenceforge/dubins.hpp"
#include "fenceforge/fence.hpp"
#include "fenceforge/grid_oracle.hpp"
#include "fenceforge/offset.hpp"
#include "fenceforge/scene.hpp"

namespace fenceforge {

struct RenderSpec {
  bool obstacles = true;
  bool perimeter = true;
  bool central = true;
  bool fence = true;
  bool door_stones = true;
  bool trajectory = true;
  bool heatmap = false;
  /// Explicit viewport; the union of all artifacts when empty.
  std::optional<BoundingBox> viewport;
  double margin = 0.5;
  int width_px = 800;
};

struct RenderArtifacts {
  const Scene* scene = nullptr;
  const Perimeter* perimeter = nullptr;
  const ErosionSet* erosion = nullptr;
  std::vector<const Fence*> fences;
  const Trajectory* trajectory = nullptr;
  const GridOracle* oracle = nullptr;
};

/// Deterministic SVG: fixed 6-decimal numbers, native arc commands, one
/// group per layer in a fixed order; empty layers are omitted.
std::string render_svg(const RenderSpec& spec, const RenderArtifacts& artifacts);

/// SVG path data for a chain, in scene coordinates with y flipped.
std::string svg_path(const CurveChain& chain);

}  // namespace fenceforge
