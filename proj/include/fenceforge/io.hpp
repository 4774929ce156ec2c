#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "fenceforge/dubins.hpp"
#include "fenceforge/fence.hpp"
#include "fenceforge/geometry.hpp"
#include "fenceforge/offset.hpp"

namespace fenceforge {

/// Numbers are rounded to 12 significant digits on output.
double round12(double v);

nlohmann::json segment_to_json(const Segment& s);
Segment segment_from_json(const nlohmann::json& j);
nlohmann::json chain_to_json(const CurveChain& chain);
/// Reads a closed chain written by chain_to_json (a list of segments).
CurveChain chain_from_json(const nlohmann::json& j);

nlohmann::json perimeter_to_json(const Perimeter& perimeter);
nlohmann::json ensemble_to_json(const OffsetEnsemble& ensemble);
nlohmann::json erosion_to_json(const ErosionSet& erosion);
nlohmann::json fence_to_json(const Fence& fence);
nlohmann::json bizarre_to_json(const BizarreReport& report);
nlohmann::json validation_to_json(const ValidationReport& report);

/// Columns t, x, y, theta, omega, clearance.
std::string trajectory_csv(const Trajectory& trajectory, const SecurityReport& security);
nlohmann::json trajectory_summary(const Trajectory& trajectory, const SecurityReport& security);

/// Serializes with 12 significant digits and two-space indentation.
std::string dump_json(const nlohmann::json& j);

}  // namespace fenceforge
