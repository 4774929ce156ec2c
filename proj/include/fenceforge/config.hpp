#pragma once

#include <string>

namespace fenceforge {

/// Run-time tunables. Defaults reproduce the documented behaviour; the
/// FENCEFORGE_CONFIG environment variable may point to a JSON file
/// overriding any subset of the keys below.
struct Config {
  double tol_rel = 1e-9;              // tolerance relative to scene diameter
  double dt = 0.0;                    // simulation step; 0 selects R_min / (50 v)
  double oracle_pitch_divisor = 512;  // grid pitch = diameter / divisor
  double cell_budget = 16e6;          // refuse larger oracle grids
  double lookahead_factor = 2.0;      // pursuit lookahead = factor * R_min
  double band_factor = 1e-2;          // tracking band = factor * R_min
};

Config parse_config(const std::string& json_text);
/// Reads FENCEFORGE_CONFIG if set, otherwise returns defaults.
Config load_config_from_env();

}  // namespace fenceforge
