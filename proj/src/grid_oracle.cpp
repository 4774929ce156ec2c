#include "fenceforge/grid_oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "fenceforge/io.hpp"

namespace fenceforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform bucket grid over a point cloud for nearest-neighbour queries.
class PointIndex {
 public:
  PointIndex(std::vector<Vec2> pts, double cell) : pts_(std::move(pts)), cell_(cell) {
    for (const Vec2& p : pts_) box_.expand(p);
    if (pts_.empty()) return;
    nx_ = static_cast<int>((box_.hi.x - box_.lo.x) / cell_) + 1;
    ny_ = static_cast<int>((box_.hi.y - box_.lo.y) / cell_) + 1;
    buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
    for (std::size_t k = 0; k < pts_.size(); ++k) buckets_[bucket(pts_[k])].push_back(k);
  }

  bool empty() const { return pts_.empty(); }
  const Vec2& operator[](std::size_t k) const { return pts_[k]; }

  double nearest(Vec2 q) const {
    if (pts_.empty()) return kInf;
    const int bi = clampi(static_cast<int>((q.x - box_.lo.x) / cell_), nx_);
    const int bj = clampi(static_cast<int>((q.y - box_.lo.y) / cell_), ny_);
    // Distance from q to the clamped bucket region, so rings bound correctly.
    const double outside = std::hypot(std::max({box_.lo.x - q.x, 0.0, q.x - box_.hi.x}),
                                      std::max({box_.lo.y - q.y, 0.0, q.y - box_.hi.y}));
    double best = kInf;
    const int max_ring = std::max(nx_, ny_);
    for (int ring = 0; ring <= max_ring; ++ring) {
      if (best < kInf && (ring - 1) * cell_ + outside > best) break;
      for (int j = bj - ring; j <= bj + ring; ++j) {
        if (j < 0 || j >= ny_) continue;
        const bool edge_row = j == bj - ring || j == bj + ring;
        for (int i = bi - ring; i <= bi + ring; i += edge_row ? 1 : 2 * ring) {
          if (i >= 0 && i < nx_) {
            for (std::size_t k : buckets_[static_cast<std::size_t>(j) * nx_ + i])
              best = std::min(best, distance(pts_[k], q));
          }
          if (ring == 0) break;
        }
      }
    }
    return best;
  }

  void collect(Vec2 q, double radius, std::vector<std::size_t>& out) const {
    if (pts_.empty()) return;
    const int i0 = clampi(static_cast<int>(std::floor((q.x - radius - box_.lo.x) / cell_)), nx_);
    const int i1 = clampi(static_cast<int>(std::floor((q.x + radius - box_.lo.x) / cell_)), nx_);
    const int j0 = clampi(static_cast<int>(std::floor((q.y - radius - box_.lo.y) / cell_)), ny_);
    const int j1 = clampi(static_cast<int>(std::floor((q.y + radius - box_.lo.y) / cell_)), ny_);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        for (std::size_t k : buckets_[static_cast<std::size_t>(j) * nx_ + i])
          if (distance(pts_[k], q) <= radius) out.push_back(k);
  }

 private:
  static int clampi(int v, int n) { return std::clamp(v, 0, n - 1); }
  std::size_t bucket(Vec2 p) const {
    const int i = clampi(static_cast<int>((p.x - box_.lo.x) / cell_), nx_);
    const int j = clampi(static_cast<int>((p.y - box_.lo.y) / cell_), ny_);
    return static_cast<std::size_t>(j) * nx_ + i;
  }

  std::vector<Vec2> pts_;
  double cell_;
  BoundingBox box_;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::vector<std::size_t>> buckets_;
};

// 1-D squared distance transform (Felzenszwalb & Huttenlocher); non-feature
// samples carry kFar so the lower envelope stays finite.
constexpr double kFar = 1e30;

void edt_1d(const double* f, double* d, int n, std::vector<int>& v, std::vector<double>& z) {
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  int k = 0;
  z[0] = -kInf;
  z[1] = kInf;
  auto meet = [&](int q, int p) {
    return ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) / (2.0 * (q - p));
  };
  for (int q = 1; q < n; ++q) {
    double s = meet(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = meet(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

std::vector<double> squared_edt(const std::vector<std::uint8_t>& feature, int nx, int ny) {
  std::vector<double> grid(static_cast<std::size_t>(nx) * ny);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = feature[k] ? 0.0 : kFar;
  std::vector<int> v;
  std::vector<double> z;
  std::vector<double> f(std::max(nx, ny)), d(std::max(nx, ny));
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) f[j] = grid[static_cast<std::size_t>(j) * nx + i];
    edt_1d(f.data(), d.data(), ny, v, z);
    for (int j = 0; j < ny; ++j) grid[static_cast<std::size_t>(j) * nx + i] = d[j];
  }
  for (int j = 0; j < ny; ++j) {
    double* row = grid.data() + static_cast<std::size_t>(j) * nx;
    std::copy(row, row + nx, f.begin());
    edt_1d(f.data(), d.data(), nx, v, z);
    std::copy(d.begin(), d.begin() + nx, row);
  }
  for (double& v2 : grid)
    if (v2 >= kFar) v2 = kInf;
  return grid;
}

double GridOracle::sample(Vec2 p) const {
  const int i = std::clamp(static_cast<int>(std::lround((p.x - origin.x) / pitch)), 0, nx - 1);
  const int j = std::clamp(static_cast<int>(std::lround((p.y - origin.y) / pitch)), 0, ny - 1);
  return value_at(i, j);
}

std::vector<int> GridOracle::erosion_labels(double d0, double R, int* count) const {
  std::vector<int> label(values.size(), 0);
  int next = 0;
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < values.size(); ++start) {
    if (label[start] != 0 || !exterior[start] || values[start] <= d0 + R) continue;
    ++next;
    label[start] = next;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      const int i = static_cast<int>(k % nx), j = static_cast<int>(k / nx);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int m = 0; m < 4; ++m) {
        const int a = i + di[m], b = j + dj[m];
        if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
        const std::size_t q = index(a, b);
        if (label[q] != 0 || !exterior[q] || values[q] <= d0 + R) continue;
        label[q] = next;
        queue.push_back(q);
      }
    }
  }
  if (count != nullptr) *count = next;
  return label;
}

std::vector<std::uint8_t> GridOracle::dilate(const std::vector<std::uint8_t>& mask, double R) const {
  const std::vector<double> d2 = squared_edt(mask, nx, ny);
  const double lim = (R / pitch) * (R / pitch);
  std::vector<std::uint8_t> out(mask.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = d2[k] <= lim ? 1 : 0;
  return out;
}

std::vector<std::uint8_t> GridOracle::erode(const std::vector<std::uint8_t>& mask, double R) const {
  std::vector<std::uint8_t> outside(mask.size());
  for (std::size_t k = 0; k < mask.size(); ++k) outside[k] = mask[k] ? 0 : 1;
  const std::vector<double> d2 = squared_edt(outside, nx, ny);
  const double lim = (R / pitch) * (R / pitch);
  std::vector<std::uint8_t> out(mask.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = mask[k] && d2[k] > lim ? 1 : 0;
  return out;
}

std::vector<std::uint8_t> GridOracle::opening(double R) const {
  // Erosion of the exterior through the distance to D: dist(c, P) > R iff sd > d0 + R.
  std::vector<std::uint8_t> eroded(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) eroded[k] = exterior[k] && values[k] > d0 + R ? 1 : 0;
  return dilate(eroded, R);
}

std::vector<Vec2> GridOracle::boundary_points(const std::vector<std::uint8_t>& mask) const {
  std::vector<Vec2> out;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const bool m = mask[index(i, j)] != 0;
      if (i + 1 < nx && m != (mask[index(i + 1, j)] != 0))
        out.push_back({origin.x + (i + 0.5) * pitch, origin.y + j * pitch});
      if (j + 1 < ny && m != (mask[index(i, j + 1)] != 0))
        out.push_back({origin.x + i * pitch, origin.y + (j + 0.5) * pitch});
    }
  }
  return out;
}

GridOracle build_grid_oracle(const Scene& scene, double pitch, double cell_budget, double R) {
  if (!(pitch > 0.0)) throw std::invalid_argument("oracle pitch must be positive");
  if (R < 0.0) R = scene.params.r_fence;
  const RegionSet regions = scene.regions();
  BoundingBox box = bbox_of(regions);
  if (box.empty()) box.expand(scene.r_in);
  box = box.padded(scene.params.d0 + 2.0 * R + 2.0 * pitch);

  GridOracle g;
  g.pitch = pitch;
  g.origin = box.lo;
  const double cells_x = std::ceil((box.hi.x - box.lo.x) / pitch) + 1.0;
  const double cells_y = std::ceil((box.hi.y - box.lo.y) / pitch) + 1.0;
  if (cells_x * cells_y > cell_budget)
    throw std::length_error(fmt::format("oracle grid of {:.0f} cells exceeds the budget of {:.0f}",
                                        cells_x * cells_y, cell_budget));
  g.nx = static_cast<int>(cells_x);
  g.ny = static_cast<int>(cells_y);
  const std::size_t n = static_cast<std::size_t>(g.nx) * g.ny;

  // Dense boundary samples and per-loop polygons.
  const double spacing = pitch / 4.0;
  std::vector<Vec2> samples;
  std::vector<std::pair<std::vector<Vec2>, bool>> polygons;  // (ring, material outside ring)
  for (const Obstacle& o : scene.obstacles) {
    if (o.kind == Obstacle::Kind::Point) {
      samples.push_back(o.point);
      continue;
    }
    std::vector<Vec2> ring = o.boundary.sample(spacing);
    samples.insert(samples.end(), ring.begin(), ring.end());
    polygons.emplace_back(std::move(ring), o.material == Material::Exterior);
  }

  // Unsigned distance, tile by tile with a shared candidate list.
  const PointIndex index(samples, 4.0 * pitch);
  g.values.assign(n, kInf);
  constexpr int kTile = 16;
  const double half_diag = kTile * pitch * std::sqrt(0.5);
  std::vector<std::size_t> cand;
  for (int tj = 0; tj < g.ny; tj += kTile) {
    for (int ti = 0; ti < g.nx; ti += kTile) {
      const Vec2 tc = g.center(ti, tj) + Vec2{0.5 * (kTile - 1) * pitch, 0.5 * (kTile - 1) * pitch};
      const double dmin = index.nearest(tc);
      cand.clear();
      index.collect(tc, dmin + 2.0 * half_diag, cand);
      for (int j = tj; j < std::min(tj + kTile, g.ny); ++j) {
        for (int i = ti; i < std::min(ti + kTile, g.nx); ++i) {
          const Vec2 c = g.center(i, j);
          double best = kInf;
          for (std::size_t k : cand) best = std::min(best, distance(index[k], c));
          g.values[g.index(i, j)] = best;
        }
      }
    }
  }

  // Sign by even-odd scanline fill of each loop.
  std::vector<std::uint8_t> inside_any(n, 0);
  std::vector<std::uint8_t> inside(n);
  std::vector<double> xs;
  for (const auto& [ring, outside_material] : polygons) {
    std::fill(inside.begin(), inside.end(), 0);
    for (int j = 0; j < g.ny; ++j) {
      const double y = g.origin.y + j * pitch;
      xs.clear();
      for (std::size_t k = 0; k < ring.size(); ++k) {
        const Vec2 p = ring[k], q = ring[(k + 1) % ring.size()];
        if ((p.y > y) != (q.y > y)) xs.push_back(p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y));
      }
      std::sort(xs.begin(), xs.end());
      for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
        const int i0 = std::max(0, static_cast<int>(std::ceil((xs[k] - g.origin.x) / pitch)));
        const int i1 = std::min(g.nx - 1, static_cast<int>(std::floor((xs[k + 1] - g.origin.x) / pitch)));
        for (int i = i0; i <= i1; ++i) inside[g.index(i, j)] = 1;
      }
    }
    for (std::size_t k = 0; k < n; ++k)
      if ((inside[k] != 0) != outside_material) inside_any[k] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (inside_any[k]) g.values[k] = -g.values[k];

  const double d0 = scene.params.d0;
  g.d0 = d0;
  g.near_d0.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) g.near_d0[k] = g.values[k] <= d0 ? 1 : 0;

  // Exterior: flood fill of {sd > d0} from the box border, or from r_in.
  g.exterior.assign(n, 0);
  std::deque<std::size_t> queue;
  auto seed = [&](int i, int j) {
    const std::size_t k = g.index(i, j);
    if (!g.near_d0[k] && !g.exterior[k]) {
      g.exterior[k] = 1;
      queue.push_back(k);
    }
  };
  for (int i = 0; i < g.nx; ++i) {
    seed(i, 0);
    seed(i, g.ny - 1);
  }
  for (int j = 0; j < g.ny; ++j) {
    seed(0, j);
    seed(g.nx - 1, j);
  }
  if (queue.empty()) {
    const int i = std::clamp(static_cast<int>(std::lround((scene.r_in.x - g.origin.x) / pitch)), 0, g.nx - 1);
    const int j = std::clamp(static_cast<int>(std::lround((scene.r_in.y - g.origin.y) / pitch)), 0, g.ny - 1);
    seed(i, j);
  }
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const int i = static_cast<int>(k % g.nx), j = static_cast<int>(k / g.nx);
    if (i > 0) seed(i - 1, j);
    if (i + 1 < g.nx) seed(i + 1, j);
    if (j > 0) seed(i, j - 1);
    if (j + 1 < g.ny) seed(i, j + 1);
  }
  return g;
}

GridOracle build_grid_oracle(const Scene& scene) {
  return build_grid_oracle(scene, scene.diameter() / scene.config.oracle_pitch_divisor,
                           scene.config.cell_budget);
}

double hausdorff(const std::vector<Vec2>& points, const std::vector<CurveChain>& chains, double spacing) {
  if (points.empty() || chains.empty()) return kInf;
  double worst = 0.0;
  for (const Vec2& p : points) {
    double best = kInf;
    for (const CurveChain& c : chains) best = std::min(best, c.distance_to(p));
    worst = std::max(worst, best);
  }
  const PointIndex index(points, 4.0 * spacing);
  for (const CurveChain& c : chains)
    for (const Vec2& q : c.sample(spacing)) worst = std::max(worst, index.nearest(q));
  return worst;
}

std::string oracle_pgm(const GridOracle& grid) {
  double lo = kInf, hi = -kInf;
  for (double v : grid.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi > lo ? hi - lo : 1.0;
  std::string out = fmt::format("P5\n{} {}\n65535\n", grid.nx, grid.ny);
  out.reserve(out.size() + 2 * grid.values.size());
  for (int j = grid.ny - 1; j >= 0; --j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double t = (grid.value_at(i, j) - lo) / span;
      const auto v = static_cast<std::uint16_t>(std::lround(std::clamp(t, 0.0, 1.0) * 65535.0));
      out.push_back(static_cast<char>(v >> 8));
      out.push_back(static_cast<char>(v & 0xff));
    }
  }
  return out;
}

std::string oracle_header_json(const GridOracle& grid) {
  double lo = kInf, hi = -kInf;
  for (double v : grid.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  nlohmann::json j;
  j["origin"] = {grid.origin.x, grid.origin.y};
  j["pitch"] = grid.pitch;
  j["nx"] = grid.nx;
  j["ny"] = grid.ny;
  j["min"] = lo;
  j["max"] = hi;
  j["rows"] = "first row is the largest y";
  j["encoding"] = "16-bit big-endian, value = min + (max - min) * pixel / 65535";
  return dump_json(j);
}

}  // namespace fenceforge
