#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fenceforge/geometry.hpp"
#include "fenceforge/scene.hpp"

namespace fenceforge {

/// Brute-force raster model of the scene, built only from dense boundary
/// samples and scanline fills. Used as an independent oracle for the exact
/// constructions.
class GridOracle {
 public:
  Vec2 origin;  // center of cell (0, 0)
  double pitch = 0.0;
  double d0 = 0.0;
  int nx = 0;
  int ny = 0;
  /// Signed distance to D at each cell center, negative inside obstacles.
  std::vector<double> values;
  /// sd <= d0.
  std::vector<std::uint8_t> near_d0;
  /// The component of {sd > d0} that forms the exterior.
  std::vector<std::uint8_t> exterior;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  Vec2 center(int i, int j) const { return {origin.x + i * pitch, origin.y + j * pitch}; }
  double value_at(int i, int j) const { return values[index(i, j)]; }
  /// Nearest-cell value, for spot checks.
  double sample(Vec2 p) const;

  /// Component labels of Q(R) = exterior cells with sd > d0 + R (0 = none).
  std::vector<int> erosion_labels(double d0, double R, int* count) const;
  /// Cells within distance R of a cell of `mask` (exact Euclidean transform).
  std::vector<std::uint8_t> dilate(const std::vector<std::uint8_t>& mask, double R) const;
  /// Cells farther than R from every cell outside `mask`.
  std::vector<std::uint8_t> erode(const std::vector<std::uint8_t>& mask, double R) const;
  /// Morphological opening of the exterior by an R-disc: Q(R) dilated by R.
  std::vector<std::uint8_t> opening(double R) const;

  /// Midpoints of cell edges separating a mask cell from a non-mask cell.
  std::vector<Vec2> boundary_points(const std::vector<std::uint8_t>& mask) const;
};

/// Samples a padded bounding box (d0 + 2R) at the given pitch. Throws
/// std::length_error when the grid would exceed `cell_budget` cells.
GridOracle build_grid_oracle(const Scene& scene, double pitch, double cell_budget = 16e6,
                             double R = -1.0);
/// Pitch = diameter / config.oracle_pitch_divisor.
GridOracle build_grid_oracle(const Scene& scene);

/// Squared Euclidean distance transform of a binary feature mask, in cell
/// units squared.
std::vector<double> squared_edt(const std::vector<std::uint8_t>& feature, int nx, int ny);

/// Symmetric Hausdorff distance between raster boundary points and chains,
/// with the chains sampled at `spacing`.
double hausdorff(const std::vector<Vec2>& points, const std::vector<CurveChain>& chains,
                 double spacing);

/// 16-bit big-endian PGM of the signed distance, plus a JSON sidecar text.
std::string oracle_pgm(const GridOracle& grid);
std::string oracle_header_json(const GridOracle& grid);

}  // namespace fenceforge
