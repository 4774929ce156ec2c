#include "fenceforge/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fenceforge {

Config parse_config(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  Config c;
  for (const auto& [key, value] : j.items()) {
    const double v = value.get<double>();
    if (key == "tol_rel") {
      c.tol_rel = v;
    } else if (key == "dt") {
      c.dt = v;
    } else if (key == "oracle_pitch_divisor") {
      c.oracle_pitch_divisor = v;
    } else if (key == "cell_budget") {
      c.cell_budget = v;
    } else if (key == "lookahead_factor") {
      c.lookahead_factor = v;
    } else if (key == "band_factor") {
      c.band_factor = v;
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  if (!(c.tol_rel > 0.0) || !(c.oracle_pitch_divisor > 0.0) || !(c.cell_budget > 0.0) ||
      !(c.lookahead_factor > 0.0) || !(c.band_factor > 0.0) || c.dt < 0.0)
    throw std::invalid_argument("config values must be positive");
  return c;
}

Config load_config_from_env() {
  const char* path = std::getenv("FENCEFORGE_CONFIG");
  if (path == nullptr || *path == '\0') return {};
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(std::string("cannot read config file ") + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace fenceforge
