#pragma once

// Finite point-cloud stand-ins for the compact sets, domains and
// neighborhoods on which sup norms are evaluated.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <variant>
#include <vector>

namespace qharm {

class Point {
 public:
  Point() = default;
  Point(double x, double y) : c_{x, y, 0.0}, dim_(2) { check(); }
  Point(double x, double y, double z) : c_{x, y, z}, dim_(3) { check(); }

  static Point from(std::span<const double> coords) {
    if (coords.size() == 2) return {coords[0], coords[1]};
    if (coords.size() == 3) return {coords[0], coords[1], coords[2]};
    throw std::invalid_argument("point must have 2 or 3 coordinates, got " +
                                std::to_string(coords.size()));
  }
  static Point origin(int dim) { return dim == 3 ? Point(0, 0, 0) : Point(0, 0); }

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }

  friend Point operator+(Point a, const Point& b) {
    for (int i = 0; i < 3; ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend Point operator-(Point a, const Point& b) {
    for (int i = 0; i < 3; ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend Point operator*(double s, Point a) {
    for (auto& v : a.c_) v *= s;
    return a;
  }
  friend bool operator==(const Point&, const Point&) = default;

  double norm() const { return std::sqrt(c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2]); }

 private:
  void check() const {
    for (double v : c_)
      if (!std::isfinite(v)) throw std::invalid_argument("point coordinates must be finite");
  }

  std::array<double, 3> c_{0.0, 0.0, 0.0};
  int dim_ = 2;
};

inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

// ---------------------------------------------------------------------------
// Shapes. A disk/circle/annulus with a 3D center is a ball/sphere/shell.

struct ShapeDescriptor;

struct Disk {
  Point center;
  double radius = 1.0;
};
struct Circle {
  Point center;
  double radius = 1.0;
};
struct Annulus {
  Point center;
  double inner = 0.5;
  double outer = 1.0;
};
struct Segment {
  Point a, b;
};
struct Rectangle {
  Point lo, hi;
};
struct FinitePoints {
  std::vector<Point> points;
};
struct UnionOf {
  std::vector<ShapeDescriptor> parts;
};

struct ShapeDescriptor {
  std::variant<Disk, Circle, Annulus, Segment, Rectangle, FinitePoints, UnionOf> shape;

  template <class S>
    requires(!std::same_as<std::remove_cvref_t<S>, ShapeDescriptor>)
  ShapeDescriptor(S s) : shape(std::move(s)) {}  // NOLINT(google-explicit-constructor)

  const char* kind() const {
    static constexpr const char* names[] = {"disk",      "circle",        "annulus", "segment",
                                            "rectangle", "finite_points", "union_of"};
    return names[shape.index()];
  }
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline int shape_dim(const ShapeDescriptor& s) {
  return std::visit(
      overloaded{
          [](const Disk& d) { return d.center.dim(); },
          [](const Circle& c) { return c.center.dim(); },
          [](const Annulus& a) { return a.center.dim(); },
          [](const Segment& g) { return g.a.dim(); },
          [](const Rectangle& r) { return r.lo.dim(); },
          [](const FinitePoints& f) { return f.points.empty() ? 2 : f.points.front().dim(); },
          [](const UnionOf& u) { return u.parts.empty() ? 2 : shape_dim(u.parts.front()); },
      },
      s.shape);
}

inline void validate(const ShapeDescriptor& s) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(std::string(s.kind()) + ": " + what);
  };
  std::visit(overloaded{
                 [&](const Disk& d) {
                   if (!(d.radius > 0)) fail("radius must be > 0");
                 },
                 [&](const Circle& c) {
                   if (!(c.radius > 0)) fail("radius must be > 0");
                 },
                 [&](const Annulus& a) {
                   if (!(a.inner > 0)) fail("inner radius must be > 0");
                   if (!(a.inner < a.outer)) fail("inner radius must be < outer radius");
                 },
                 [&](const Segment& g) {
                   if (g.a.dim() != g.b.dim()) fail("endpoint dimensions differ");
                   if (distance(g.a, g.b) <= 1e-12) fail("endpoints must be distinct");
                 },
                 [&](const Rectangle& r) {
                   if (r.lo.dim() != r.hi.dim()) fail("corner dimensions differ");
                   for (int i = 0; i < r.lo.dim(); ++i)
                     if (!(r.lo[i] < r.hi[i])) fail("lo must be < hi in every coordinate");
                 },
                 [&](const FinitePoints& f) {
                   if (f.points.empty()) fail("needs at least one point");
                   for (const auto& p : f.points)
                     if (p.dim() != f.points.front().dim()) fail("mixed dimensions");
                 },
                 [&](const UnionOf& u) {
                   if (u.parts.empty()) fail("needs at least one part");
                   for (const auto& p : u.parts) {
                     validate(p);
                     if (shape_dim(p) != shape_dim(u.parts.front())) fail("mixed dimensions");
                   }
                 },
             },
             s.shape);
}

// How far p lies inside the region of the shape: positive inside, zero on the
// boundary, minus the distance to the set for sets without interior.
inline double region_depth(const ShapeDescriptor& s, const Point& p) {
  return std::visit(
      overloaded{
          [&](const Disk& d) { return d.radius - distance(p, d.center); },
          [&](const Circle& c) { return -std::abs(distance(p, c.center) - c.radius); },
          [&](const Annulus& a) {
            double r = distance(p, a.center);
            return std::min(r - a.inner, a.outer - r);
          },
          [&](const Segment& g) {
            Point d = g.b - g.a;
            double len2 = d.norm() * d.norm();
            double t = 0.0;
            for (int i = 0; i < p.dim(); ++i) t += (p[i] - g.a[i]) * d[i];
            t = std::clamp(t / len2, 0.0, 1.0);
            return -distance(p, g.a + t * d);
          },
          [&](const Rectangle& r) {
            double depth = std::numeric_limits<double>::infinity();
            for (int i = 0; i < r.lo.dim(); ++i)
              depth = std::min({depth, p[i] - r.lo[i], r.hi[i] - p[i]});
            return depth;
          },
          [&](const FinitePoints& f) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : f.points) best = std::min(best, distance(p, q));
            return -best;
          },
          [&](const UnionOf& u) {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& part : u.parts) best = std::max(best, region_depth(part, p));
            return best;
          },
      },
      s.shape);
}

inline bool contains(const ShapeDescriptor& s, const Point& p, double tol = 1e-12) {
  return region_depth(s, p) >= -tol;
}

// ---------------------------------------------------------------------------

struct SampledSet {
  std::string label;
  std::vector<Point> points;
  std::optional<ShapeDescriptor> source;
  double mesh = 0.0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  int dim() const { return points.empty() ? 0 : points.front().dim(); }
};

// Indices of the first occurrence of every point, duplicates judged within tol.
inline std::vector<std::size_t> unique_indices(std::span<const Point> pts, double tol = 1e-12) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pts[a][0] != pts[b][0] ? pts[a][0] < pts[b][0] : a < b;
  });
  std::vector<char> dropped(pts.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t a = order[i];
    for (std::size_t j = i + 1; j < order.size() && pts[order[j]][0] - pts[a][0] <= tol; ++j) {
      std::size_t b = order[j];
      if (dropped[b] || dropped[a]) continue;
      if (distance(pts[a], pts[b]) <= tol) dropped[std::max(a, b)] = 1;
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!dropped[i]) keep.push_back(i);
  return keep;
}

inline std::vector<Point> dedupe(std::vector<Point> pts, double tol = 1e-12) {
  auto keep = unique_indices(pts, tol);
  std::vector<Point> out;
  out.reserve(keep.size());
  for (auto i : keep) out.push_back(pts[i]);
  return out;
}

namespace detail {

inline void circle_points(const Point& c, double radius, double mesh, std::vector<Point>& out) {
  auto n = static_cast<int>(std::ceil(2.0 * std::numbers::pi * radius / mesh));
  n = std::max(n, 3);
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * std::numbers::pi * k / n;
    out.emplace_back(c[0] + radius * std::cos(t), c[1] + radius * std::sin(t));
  }
}

inline void sphere_points(const Point& c, double radius, double mesh, std::vector<Point>& out) {
  auto rings = std::max(2, static_cast<int>(std::ceil(std::numbers::pi * radius / mesh)));
  for (int i = 0; i <= rings; ++i) {
    double theta = std::numbers::pi * i / rings;
    double z = radius * std::cos(theta);
    double rho = radius * std::sin(theta);
    if (i == 0 || i == rings) {
      out.emplace_back(c[0], c[1], c[2] + z);
      continue;
    }
    auto n = std::max(3, static_cast<int>(std::ceil(2.0 * std::numbers::pi * rho / mesh)));
    for (int k = 0; k < n; ++k) {
      double phi = 2.0 * std::numbers::pi * k / n;
      out.emplace_back(c[0] + rho * std::cos(phi), c[1] + rho * std::sin(phi), c[2] + z);
    }
  }
}

// Lattice c + h*(i, j[, k]) restricted to points accepted by keep().
template <class Pred>
void lattice_points(const Point& c, double half_extent, double h, Pred keep, std::vector<Point>& out) {
  auto n = static_cast<int>(std::ceil(half_extent / h));
  if (c.dim() == 2) {
    for (int i = -n; i <= n; ++i)
      for (int j = -n; j <= n; ++j) {
        Point p(c[0] + i * h, c[1] + j * h);
        if (keep(p)) out.push_back(p);
      }
  } else {
    for (int i = -n; i <= n; ++i)
      for (int j = -n; j <= n; ++j)
        for (int k = -n; k <= n; ++k) {
          Point p(c[0] + i * h, c[1] + j * h, c[2] + k * h);
          if (keep(p)) out.push_back(p);
        }
  }
}

inline void shell(const Point& c, double radius, double mesh, std::vector<Point>& out) {
  if (c.dim() == 2)
    circle_points(c, radius, mesh, out);
  else
    sphere_points(c, radius, mesh, out);
}

inline void sample_into(const ShapeDescriptor& s, double h, std::vector<Point>& out) {
  std::visit(overloaded{
                 [&](const Disk& d) {
                   shell(d.center, d.radius, h, out);
                   lattice_points(
                       d.center, d.radius, h,
                       [&](const Point& p) { return distance(p, d.center) < d.radius - h / 2; }, out);
                 },
                 [&](const Circle& c) { shell(c.center, c.radius, h, out); },
                 [&](const Annulus& a) {
                   shell(a.center, a.inner, h, out);
                   shell(a.center, a.outer, h, out);
                   lattice_points(
                       a.center, a.outer, h,
                       [&](const Point& p) {
                         double r = distance(p, a.center);
                         return r > a.inner + h / 2 && r < a.outer - h / 2;
                       },
                       out);
                 },
                 [&](const Segment& g) {
                   auto n = std::max(1, static_cast<int>(std::ceil(distance(g.a, g.b) / h)));
                   for (int k = 0; k <= n; ++k) out.push_back(g.a + (double(k) / n) * (g.b - g.a));
                 },
                 [&](const Rectangle& r) {
                   std::array<int, 3> n{0, 0, 0};
                   for (int i = 0; i < r.lo.dim(); ++i)
                     n[i] = std::max(1, static_cast<int>(std::ceil((r.hi[i] - r.lo[i]) / h)));
                   auto coord = [&](int axis, int k) {
                     return r.lo[axis] + (r.hi[axis] - r.lo[axis]) * k / n[axis];
                   };
                   for (int i = 0; i <= n[0]; ++i)
                     for (int j = 0; j <= n[1]; ++j) {
                       if (r.lo.dim() == 2) {
                         out.emplace_back(coord(0, i), coord(1, j));
                         continue;
                       }
                       for (int k = 0; k <= n[2]; ++k) out.emplace_back(coord(0, i), coord(1, j), coord(2, k));
                     }
                 },
                 [&](const FinitePoints& f) { out.insert(out.end(), f.points.begin(), f.points.end()); },
                 [&](const UnionOf& u) {
                   for (const auto& part : u.parts) sample_into(part, h, out);
                 },
             },
             s.shape);
}

}  // namespace detail

/// Deterministic quasi-uniform samples of a shape: lattice interior plus
/// explicit boundary rings, neighbor spacing at most `mesh`.
inline SampledSet sample_shape(const ShapeDescriptor& shape, double mesh) {
  if (!(mesh > 0) || !std::isfinite(mesh)) throw std::invalid_argument("mesh must be a positive finite number");
  validate(shape);
  if (const auto* f = std::get_if<FinitePoints>(&shape.shape)) {
    if (unique_indices(f->points).size() != f->points.size())
      throw std::invalid_argument("finite_points: duplicate points");
  }
  std::vector<Point> pts;
  detail::sample_into(shape, mesh, pts);
  return {shape.kind(), dedupe(std::move(pts)), shape, mesh};
}

// Bucket grid over a point set for nearest-distance queries.
class NearestIndex {
 public:
  explicit NearestIndex(const SampledSet& s, double cell = 0.0) : pts_(s.points) {
    if (pts_.empty()) throw std::invalid_argument("NearestIndex: empty set");
    dim_ = pts_.front().dim();
    if (!(cell > 0)) cell = s.mesh > 0 ? s.mesh : 0.1;
    cell_ = cell;
    for (std::size_t i = 0; i < pts_.size(); ++i) buckets_[key(cell_of(pts_[i]))].push_back(i);
    lo_ = hi_ = cell_of(pts_.front());
    for (const auto& p : pts_) {
      auto c = cell_of(p);
      for (int a = 0; a < 3; ++a) {
        lo_[a] = std::min(lo_[a], c[a]);
        hi_[a] = std::max(hi_[a], c[a]);
      }
    }
  }

  double distance_to(const Point& x) const {
    if (x.dim() != dim_) throw std::invalid_argument("dimension mismatch");
    auto c = cell_of(x);
    // Chebyshev ring distance to the occupied bounding box bounds how far we need to look.
    int start = 0;
    for (int a = 0; a < dim_; ++a) start = std::max({start, lo_[a] - c[a], c[a] - hi_[a]});
    int max_ring = 0;
    for (int a = 0; a < dim_; ++a) max_ring = std::max({max_ring, std::abs(c[a] - lo_[a]), std::abs(hi_[a] - c[a])});
    if (max_ring - start > 48) return brute(x);
    double best = std::numeric_limits<double>::infinity();
    for (int ring = start; ring <= max_ring; ++ring) {
      visit_ring(c, ring, [&](std::size_t i) { best = std::min(best, distance(x, pts_[i])); });
      // Any point in ring+1 or beyond is at least ring*cell away.
      if (best <= ring * cell_) break;
    }
    return best;
  }

 private:
  using Cell = std::array<int, 3>;

  Cell cell_of(const Point& p) const {
    Cell c{0, 0, 0};
    for (int a = 0; a < p.dim(); ++a) c[a] = static_cast<int>(std::floor(p[a] / cell_));
    return c;
  }
  static std::int64_t key(const Cell& c) {
    auto u = [](int v) { return static_cast<std::int64_t>(v) & 0x1FFFFF; };
    return (u(c[0]) << 42) | (u(c[1]) << 21) | u(c[2]);
  }
  template <class F>
  void visit_ring(const Cell& c, int ring, F&& f) const {
    int zr = dim_ == 3 ? ring : 0;
    for (int i = -ring; i <= ring; ++i)
      for (int j = -ring; j <= ring; ++j)
        for (int k = -zr; k <= zr; ++k) {
          if (std::max({std::abs(i), std::abs(j), std::abs(k)}) != ring) continue;
          auto it = buckets_.find(key({c[0] + i, c[1] + j, c[2] + k}));
          if (it == buckets_.end()) continue;
          for (auto idx : it->second) f(idx);
        }
  }
  double brute(const Point& x) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts_) best = std::min(best, distance(x, p));
    return best;
  }

  std::vector<Point> pts_;
  std::unordered_map<std::int64_t, std::vector<std::size_t>> buckets_;
  double cell_ = 0.1;
  int dim_ = 2;
  Cell lo_{}, hi_{};
};

inline double set_distance(const Point& x, const SampledSet& s) {
  if (s.empty()) throw std::invalid_argument("set_distance: empty set");
  if (x.dim() != s.dim()) throw std::invalid_argument("set_distance: dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : s.points) best = std::min(best, distance(x, p));
  return best;
}

/// Samples of U_delta = {x : dist(x, K) < delta} on the origin-aligned lattice
/// of spacing `mesh`, together with every point of K.
inline SampledSet delta_neighborhood(const SampledSet& K, double delta, double mesh) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be > 0");
  if (!(mesh > 0)) throw std::invalid_argument("mesh must be > 0");
  if (K.empty()) throw std::invalid_argument("delta_neighborhood: empty K");
  const int dim = K.dim();
  std::array<double, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    lo[a] = hi[a] = K.points.front()[a];
    for (const auto& p : K.points) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  std::array<int, 3> i0{0, 0, 0}, i1{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    i0[a] = static_cast<int>(std::floor((lo[a] - delta) / mesh));
    i1[a] = static_cast<int>(std::ceil((hi[a] + delta) / mesh));
  }
  NearestIndex index(K, std::max(delta / 2, K.mesh > 0 ? K.mesh : delta / 2));
  std::vector<Point> pts = K.points;
  for (int i = i0[0]; i <= i1[0]; ++i)
    for (int j = i0[1]; j <= i1[1]; ++j)
      for (int k = i0[2]; k <= i1[2]; ++k) {
        Point p = dim == 2 ? Point(i * mesh, j * mesh) : Point(i * mesh, j * mesh, k * mesh);
        if (index.distance_to(p) < delta) pts.push_back(p);
      }
  return {K.label + "_delta", dedupe(std::move(pts)), std::nullopt, mesh};
}

inline SampledSet merge(const SampledSet& a, const SampledSet& b, std::string label) {
  if (!a.empty() && !b.empty() && a.dim() != b.dim()) throw std::invalid_argument("merge: dimension mismatch");
  std::vector<Point> pts = a.points;
  pts.insert(pts.end(), b.points.begin(), b.points.end());
  return {std::move(label), dedupe(std::move(pts)), std::nullopt, std::max(a.mesh, b.mesh)};
}

// Points of s accepted by pred. A subset is no longer its source shape.
template <class Pred>
SampledSet filter(const SampledSet& s, Pred pred, std::string label) {
  SampledSet out{std::move(label), {}, std::nullopt, s.mesh};
  for (const auto& p : s.points)
    if (pred(p)) out.points.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------

struct SampledShape {
  ShapeDescriptor shape;
  double mesh;
};

struct Scene {
  SampledSet K;
  SampledSet E;
  SampledSet D;
  double delta = 0.1;
};

/// Builds a scene; E's samples are merged into K so E ⊂ K holds exactly, and
/// K must sit at least delta (minus mesh/2) inside D's region.
inline Scene make_scene(const SampledShape& k, const SampledShape& e, const SampledShape& d, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("scene: delta must be > 0");
  Scene scene;
  scene.E = sample_shape(e.shape, e.mesh);
  scene.E.label = "E";
  auto k_own = sample_shape(k.shape, k.mesh);
  if (k_own.dim() != scene.E.dim()) throw std::invalid_argument("scene: K and E dimensions differ");
  scene.K = merge(scene.E, k_own, "K");
  scene.K.source = k.shape;
  scene.K.mesh = k.mesh;
  scene.D = sample_shape(d.shape, d.mesh);
  scene.D.label = "D";
  if (scene.D.dim() != scene.K.dim()) throw std::invalid_argument("scene: D dimension differs from K");
  scene.delta = delta;
  double slack = std::max(k.mesh, d.mesh) / 2;
  for (const auto& p : scene.K.points)
    if (region_depth(d.shape, p) < delta - slack)
      throw std::invalid_argument("scene: K is not compactly inside D with margin delta");
  return scene;
}

}  // namespace qharm
