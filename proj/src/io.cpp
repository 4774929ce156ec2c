#include "fenceforge/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <set>

#include <fmt/format.h>

namespace fenceforge {

using nlohmann::json;

namespace {

json vec_json(Vec2 p) { return json::array({p.x, p.y}); }

Vec2 vec_from(const json& j, const char* key) {
  if (!j.contains(key)) throw GeometryError(fmt::format("segment is missing '{}'", key));
  const json& v = j[key];
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw GeometryError(fmt::format("'{}' must be a pair of numbers", key));
  return {v[0].get<double>(), v[1].get<double>()};
}

double num_from(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw GeometryError(fmt::format("segment needs a numeric '{}'", key));
  return j[key].get<double>();
}

void check_keys(const json& j, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw GeometryError(fmt::format("unknown segment key '{}'", it.key()));
}

json round_all(const json& j) {
  if (j.is_number_float()) return round12(j.get<double>());
  if (j.is_array() || j.is_object()) {
    json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = round_all(*it);
    return out;
  }
  return j;
}

json provenance_json(const Provenance& p) {
  json j = {{"kind", to_string(p.kind)}, {"region", p.region}};
  if (p.kind == PieceKind::Circinate) {
    j["birth"] = vec_json(p.birth);
  } else {
    j["segment"] = p.segment;
    j["base_curvature"] = p.base_curvature;
  }
  return j;
}

json candidate_json(const BizarreCandidate& c) {
  json w = json::array();
  for (const Vec2& p : c.witness) w.push_back(vec_json(p));
  const char* which = case_name(c.which);
  return {{"value", c.value}, {"case", which}, {"label", c.label}, {"witness", w},
          {"conservative", c.conservative}};
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json segment_to_json(const Segment& s) {
  if (s.is_line()) return {{"kind", "line"}, {"a", vec_json(s.a())}, {"b", vec_json(s.b())}};
  return {{"kind", "arc"},
          {"center", vec_json(s.center())},
          {"radius", s.radius()},
          {"start_angle", s.start_angle()},
          {"sweep", s.sweep()}};
}

Segment segment_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw GeometryError("segment needs a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "line") {
    check_keys(j, {"kind", "a", "b"});
    return Segment::line(vec_from(j, "a"), vec_from(j, "b"));
  }
  if (kind == "arc") {
    check_keys(j, {"kind", "center", "radius", "start_angle", "sweep"});
    return Segment::arc(vec_from(j, "center"), num_from(j, "radius"), num_from(j, "start_angle"),
                        num_from(j, "sweep"));
  }
  throw GeometryError("unknown segment kind '" + kind + "'");
}

json chain_to_json(const CurveChain& chain) {
  json out = json::array();
  for (const Segment& s : chain.segments()) out.push_back(segment_to_json(s));
  return out;
}

CurveChain chain_from_json(const json& j) {
  const json& segs = j.is_object() && j.contains("segments") ? j["segments"] : j;
  if (!segs.is_array()) throw GeometryError("chain must be an array of segments");
  std::vector<Segment> out;
  for (const json& s : segs) out.push_back(segment_from_json(s));
  return CurveChain(std::move(out), true);
}

json perimeter_to_json(const Perimeter& perimeter) {
  json prov = json::array();
  for (const Provenance& p : perimeter.provenance) prov.push_back(provenance_json(p));
  return {{"d0", perimeter.d0},
          {"length", perimeter.chain.length()},
          {"signed_area", perimeter.chain.signed_area()},
          {"segments", chain_to_json(perimeter.chain)},
          {"provenance", prov}};
}

json ensemble_to_json(const OffsetEnsemble& ensemble) {
  json pieces = json::array();
  for (const EnsemblePiece& p : ensemble.pieces) {
    json j = {{"provenance", provenance_json(p.source)}, {"degenerate", p.degenerate}};
    if (p.segment) j["segment"] = segment_to_json(*p.segment);
    if (p.degenerate) j["point"] = vec_json(p.degenerate_point);
    pieces.push_back(j);
  }
  return {{"d_star", ensemble.d_star}, {"pieces", pieces}};
}

json erosion_to_json(const ErosionSet& erosion) {
  json comps = json::array();
  for (std::size_t k = 0; k < erosion.components.size(); ++k) {
    comps.push_back({{"index", k},
                     {"unbounded", erosion.unbounded == k},
                     {"segments", chain_to_json(erosion.components[k])}});
  }
  return {{"R", erosion.R}, {"components", comps}};
}

json fence_to_json(const Fence& fence) {
  json prov = json::array();
  for (const FenceProvenance& p : fence.provenance) {
    prov.push_back({{"type", p.type == FenceSegmentType::OnPerimeter ? 1 : 2},
                    {p.type == FenceSegmentType::OnPerimeter ? "perimeter_segment" : "door_stone", p.index}});
  }
  json stones = json::array();
  for (const DoorStone& d : fence.door_stones) {
    json contacts = json::array();
    for (const Vec2& c : d.contacts) contacts.push_back(vec_json(c));
    json gates = json::array();
    for (std::size_t g = 0; g < d.gates.size(); ++g) {
      gates.push_back({{"segment", segment_to_json(d.gates[g])},
                       {"cave_length", d.caves[g].length()},
                       {"cave", chain_to_json(d.caves[g])}});
    }
    stones.push_back({{"center", vec_json(d.center)},
                      {"contacts", contacts},
                      {"main_angle", d.main_angle},
                      {"gates", gates}});
  }
  return {{"R", fence.R},
          {"component", fence.component},
          {"length", fence.contact_path.length()},
          {"segments", chain_to_json(fence.contact_path)},
          {"provenance", prov},
          {"door_stones", stones}};
}

json bizarre_to_json(const BizarreReport& report) {
  json list = json::array();
  for (const BizarreCandidate& c : report.enumeration) list.push_back(candidate_json(c));
  json verdicts = json::array();
  for (const BizarreVerdict& v : report.verdicts) {
    json m = json::array();
    for (const BizarreCandidate& c : v.matches) m.push_back(candidate_json(c));
    verdicts.push_back({{"d_star", v.d_star}, {"bizarre", !v.ok()}, {"matches", m}});
  }
  return {{"enumeration", list}, {"verdicts", verdicts}};
}

json validation_to_json(const ValidationReport& report) {
  json checks = json::array();
  for (const CheckResult& c : report.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"ok", report.ok()}, {"checks", checks}};
}

std::string trajectory_csv(const Trajectory& tr, const SecurityReport& security) {
  std::string out = "t,x,y,theta,omega,clearance\n";
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    const DubinsState& s = tr.states[k];
    const double omega = k < tr.controls.size() ? tr.controls[k] : 0.0;
    const double clear = k < security.clearance.size() ? security.clearance[k] : NAN;
    out += fmt::format("{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g}\n", s.t, s.r.x, s.r.y, s.theta, omega, clear);
  }
  return out;
}

json trajectory_summary(const Trajectory& tr, const SecurityReport& security) {
  double max_err = 0.0;
  for (std::size_t k = tr.converged_index; k < tr.cross_track.size(); ++k)
    max_err = std::max(max_err, std::abs(tr.cross_track[k]));
  double max_clear = -INFINITY;
  for (double c : security.clearance) max_clear = std::max(max_clear, c);
  json j = {{"converged", tr.converged},
            {"loops_completed", tr.loops_completed},
            {"steps", tr.controls.size()},
            {"dt", tr.dt},
            {"approach_steps", tr.approach_steps},
            {"converged_time", tr.converged ? tr.states[tr.converged_index].t : NAN},
            {"error_band", tr.band},
            {"max_cross_track_after_convergence", max_err},
            {"secure", security.ok},
            {"min_clearance", security.min_clearance},
            {"max_clearance", security.clearance.empty() ? 0.0 : max_clear}};
  if (!tr.diagnostic.empty()) j["diagnostic"] = tr.diagnostic;
  if (!security.ok) j["security_failure"] = security.reason;
  return j;
}

std::string dump_json(const json& j) { return round_all(j).dump(2) + "\n"; }

}  // namespace fenceforge
