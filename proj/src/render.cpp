#include "fenceforge/render.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace fenceforge {

namespace {

constexpr int kHeatmapMaxCells = 128;

std::string num(double v) {
  std::string s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string pt(Vec2 p) { return num(p.x) + "," + num(-p.y); }

void append_arc(std::string& d, const Segment& s) {
  // y is flipped on screen, so counterclockwise scene arcs have sweep-flag 0.
  const int sweep_flag = s.sweep() > 0.0 ? 0 : 1;
  const double r = s.radius();
  const int pieces = std::abs(s.sweep()) > kPi ? 2 : 1;
  for (int k = 1; k <= pieces; ++k) {
    const Vec2 to = s.center() + unit_from_angle(s.start_angle() + s.sweep() * k / pieces) * r;
    d += fmt::format(" A {} {} 0 0 {} {}", num(r), num(r), sweep_flag, pt(to));
  }
}

std::string segment_path(const Segment& s) {
  std::string d = "M " + pt(s.start());
  if (s.is_line()) {
    d += " L " + pt(s.end());
  } else {
    append_arc(d, s);
  }
  return d;
}

std::string element(const std::string& cls, const std::string& d) {
  return fmt::format("<path class=\"{}\" d=\"{}\"/>\n", cls, d);
}

std::string circle(const std::string& cls, Vec2 c, double r) {
  return fmt::format("<circle class=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n", cls, num(c.x), num(-c.y), num(r));
}

std::string group(const std::string& id, const std::string& body) {
  if (body.empty()) return "";
  return fmt::format("<g id=\"{}\">\n{}</g>\n", id, body);
}

BoundingBox auto_viewport(const RenderArtifacts& a) {
  BoundingBox box;
  if (a.scene) {
    for (const Obstacle& o : a.scene->obstacles) {
      if (o.kind == Obstacle::Kind::Point) {
        box.expand(o.point);
      } else {
        box.expand(o.boundary.bbox());
      }
    }
    box.expand(a.scene->r_in);
  }
  if (a.perimeter) box.expand(a.perimeter->chain.bbox());
  for (const Fence* f : a.fences) box.expand(f->contact_path.bbox());
  if (a.trajectory)
    for (const DubinsState& s : a.trajectory->states) box.expand(s.r);
  if (box.empty()) box = {{-1.0, -1.0}, {1.0, 1.0}};
  return box;
}

const char* kStyle =
    "<style>\n"
    ".obstacle{fill:#888;fill-opacity:0.5;stroke:#333;stroke-width:0.02}\n"
    ".obstacle-exterior{fill:none;stroke:#333;stroke-width:0.04}\n"
    ".perimeter{fill:none;stroke:#1f77b4;stroke-width:0.02}\n"
    ".central{fill:none;stroke:#2ca02c;stroke-width:0.015;stroke-dasharray:0.06 0.04}\n"
    ".fence{fill:none;stroke:#d62728;stroke-width:0.025}\n"
    ".gate{fill:none;stroke:#ff7f0e;stroke-width:0.04}\n"
    ".doorstone{fill:none;stroke:#ff7f0e;stroke-width:0.01;stroke-dasharray:0.03 0.03}\n"
    ".cave{fill:none;stroke:#9467bd;stroke-width:0.03}\n"
    ".trajectory{fill:none;stroke:#17becf;stroke-width:0.015}\n"
    ".robot{fill:#17becf}\n"
    "</style>\n";

}  // namespace

std::string svg_path(const CurveChain& chain) {
  if (chain.empty()) return "";
  std::string d = "M " + pt(chain[0].start());
  for (const Segment& s : chain.segments()) {
    if (s.is_line()) {
      d += " L " + pt(s.end());
    } else {
      append_arc(d, s);
    }
  }
  if (chain.closed()) d += " Z";
  return d;
}

std::string render_svg(const RenderSpec& spec, const RenderArtifacts& a) {
  const BoundingBox box = (spec.viewport ? *spec.viewport : auto_viewport(a)).padded(spec.margin);
  const double w = box.hi.x - box.lo.x, h = box.hi.y - box.lo.y;
  const int height_px = std::max(1, static_cast<int>(std::lround(spec.width_px * h / w)));
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">\n",
      spec.width_px, height_px, num(box.lo.x), num(-box.hi.y), num(w), num(h));
  out += kStyle;

  if (spec.heatmap && a.oracle != nullptr && a.oracle->nx > 0) {
    const GridOracle& g = *a.oracle;
    const int stride = std::max(1, std::max(g.nx, g.ny) / kHeatmapMaxCells);
    double vmax = 0.0;
    for (double v : g.values)
      if (std::isfinite(v)) vmax = std::max(vmax, std::abs(v));
    std::string body;
    const double cell = g.pitch * stride;
    for (int j = 0; j < g.ny; j += stride) {
      for (int i = 0; i < g.nx; i += stride) {
        const double v = g.value_at(i, j);
        const double t = vmax > 0.0 ? std::clamp(v / vmax, -1.0, 1.0) : 0.0;
        const int shade = static_cast<int>(std::lround(127.5 + 127.5 * t));
        const Vec2 c = g.center(i, j);
        body += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"rgb({},{},{})\"/>\n",
                            num(c.x - 0.5 * g.pitch), num(-(c.y - 0.5 * g.pitch + cell)), num(cell), num(cell),
                            shade, shade, shade);
      }
    }
    out += group("heatmap", body);
  }

  if (spec.obstacles && a.scene) {
    std::string body;
    for (const Obstacle& o : a.scene->obstacles) {
      if (o.kind == Obstacle::Kind::Point) {
        body += circle("obstacle", o.point, 0.04);
      } else {
        body += element(o.material == Material::Exterior ? "obstacle-exterior" : "obstacle", svg_path(o.boundary));
      }
    }
    out += group("obstacles", body);
  }
  if (spec.perimeter && a.perimeter) out += group("perimeter", element("perimeter", svg_path(a.perimeter->chain)));
  if (spec.central && a.erosion) {
    std::string body;
    for (const CurveChain& c : a.erosion->components) body += element("central", svg_path(c));
    out += group("central", body);
  }
  if (spec.fence && !a.fences.empty()) {
    std::string body;
    for (const Fence* f : a.fences) {
      for (std::size_t i = 0; i < f->contact_path.size(); ++i) {
        const bool gate = f->provenance[i].type == FenceSegmentType::Gate;
        body += element(gate ? "gate" : "fence", segment_path(f->contact_path[i]));
      }
    }
    out += group("fence", body);
  }
  if (spec.door_stones && !a.fences.empty()) {
    std::string body;
    for (const Fence* f : a.fences) {
      for (const DoorStone& d : f->door_stones) {
        body += circle("doorstone", d.center, f->R);
        for (const CurveChain& cave : d.caves) body += element("cave", svg_path(cave));
      }
    }
    out += group("door-stones", body);
  }
  if (spec.trajectory && a.trajectory && a.trajectory->states.size() > 1) {
    std::string d = "M " + pt(a.trajectory->states[0].r);
    for (std::size_t k = 1; k < a.trajectory->states.size(); ++k) d += " L " + pt(a.trajectory->states[k].r);
    out += group("trajectory", element("trajectory", d) + circle("robot", a.trajectory->states[0].r, 0.05));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fenceforge
