#pragma once

// Cell shapes, their closed-form metrics, and Monte-Carlo verifiers.
//
// Every shape is described by a single size parameter:
//   Square               side length
//   EquilateralTriangle  height
//   RegularHexagon       side length
//   polyhedra            edge length
//
// Adjacency between two cells of the same shape is the face-sharing mirror
// pair: the neighbour is the reflection of the cell through one of its
// faces (edges in 2D).  For the tiling shapes this coincides with the
// lattice neighbour.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gafcell/error.hpp"
#include "gafcell/vec.hpp"

namespace gafcell {

enum class ShapeKind {
  Square,
  EquilateralTriangle,
  RegularHexagon,
  Cube,
  RegularTetrahedron,
  RegularOctahedron,
  RegularDodecahedron,
  RegularIcosahedron,
};

inline constexpr std::array<ShapeKind, 8> kAllShapeKinds = {
    ShapeKind::Square,           ShapeKind::EquilateralTriangle, ShapeKind::RegularHexagon,
    ShapeKind::Cube,             ShapeKind::RegularTetrahedron,  ShapeKind::RegularOctahedron,
    ShapeKind::RegularDodecahedron, ShapeKind::RegularIcosahedron,
};

constexpr int dimension_of(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Square:
    case ShapeKind::EquilateralTriangle:
    case ShapeKind::RegularHexagon:
      return 2;
    default:
      return 3;
  }
}

constexpr std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Square: return "square";
    case ShapeKind::EquilateralTriangle: return "triangle";
    case ShapeKind::RegularHexagon: return "hexagon";
    case ShapeKind::Cube: return "cube";
    case ShapeKind::RegularTetrahedron: return "tetrahedron";
    case ShapeKind::RegularOctahedron: return "octahedron";
    case ShapeKind::RegularDodecahedron: return "dodecahedron";
    case ShapeKind::RegularIcosahedron: return "icosahedron";
  }
  return "?";
}

// Accepts the canonical names above plus "hexahedron" for the cube.
inline std::optional<ShapeKind> parse_shape_kind(std::string_view name) {
  for (ShapeKind k : kAllShapeKinds) {
    if (name == to_string(k)) return k;
  }
  if (name == "hexahedron") return ShapeKind::Cube;
  return std::nullopt;
}

class CellShape {
 public:
  CellShape(ShapeKind kind, double size_param) : kind_(kind), size_param_(size_param) {
    if (!(size_param > 0.0) || !std::isfinite(size_param)) {
      throw InvalidGeometry("cell size parameter must be positive and finite, got " +
                            std::to_string(size_param));
    }
  }

  ShapeKind kind() const { return kind_; }
  double size_param() const { return size_param_; }
  int dimension() const { return dimension_of(kind_); }

  friend bool operator==(const CellShape&, const CellShape&) = default;

 private:
  ShapeKind kind_;
  double size_param_;
};

struct ShapeMetrics {
  double measure = 0.0;  // area or volume
  double inradius = 0.0;
  double circumradius = 0.0;  // barycenter to farthest point
  double diameter = 0.0;      // farthest pair within the cell
  double adjacent_barycenter_distance = 0.0;
  double adjacent_diameter = 0.0;  // farthest pair across the cell and its mirror neighbour
};

namespace detail {

inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline constexpr double kSqrt3 = std::numbers::sqrt3;
inline const double kSqrt5 = std::sqrt(5.0);
inline const double kSqrt6 = std::sqrt(6.0);

// Metrics of the shape with unit size parameter.
inline ShapeMetrics unit_metrics(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Square:
      return {1.0, 0.5, kSqrt2 / 2.0, kSqrt2, 1.0, kSqrt5};
    case ShapeKind::EquilateralTriangle:
      // Unit height; side 2/sqrt(3).  Neighbours form a rhombus whose long
      // diagonal joins the two apexes: 2 heights.
      return {1.0 / kSqrt3, 1.0 / 3.0, 2.0 / 3.0, 2.0 / kSqrt3, 2.0 / 3.0, 2.0};
    case ShapeKind::RegularHexagon:
      return {3.0 * kSqrt3 / 2.0, kSqrt3 / 2.0, 1.0, 2.0, kSqrt3, std::sqrt(13.0)};
    case ShapeKind::Cube:
      return {1.0, 0.5, kSqrt3 / 2.0, kSqrt3, 1.0, kSqrt6};
    case ShapeKind::RegularTetrahedron:
      return {kSqrt2 / 12.0, kSqrt6 / 12.0, kSqrt6 / 4.0, 1.0, kSqrt6 / 6.0, 2.0 * kSqrt6 / 3.0};
    case ShapeKind::RegularOctahedron:
      return {kSqrt2 / 3.0, kSqrt6 / 6.0, kSqrt2 / 2.0, kSqrt2, kSqrt6 / 3.0, std::sqrt(11.0 / 3.0)};
    case ShapeKind::RegularDodecahedron: {
      const double inr = 0.5 * std::sqrt((25.0 + 11.0 * kSqrt5) / 10.0);
      const double circ = kSqrt3 * (1.0 + kSqrt5) / 4.0;
      return {(15.0 + 7.0 * kSqrt5) / 4.0, inr, circ, 2.0 * circ, 2.0 * inr,
              std::sqrt((115.0 + 49.0 * kSqrt5) / 10.0)};
    }
    case ShapeKind::RegularIcosahedron: {
      const double inr = kSqrt3 * (3.0 + kSqrt5) / 12.0;
      const double circ = std::sqrt(10.0 + 2.0 * kSqrt5) / 4.0;
      return {5.0 * (3.0 + kSqrt5) / 12.0, inr, circ, 2.0 * circ, 2.0 * inr,
              std::sqrt((17.0 + 6.0 * kSqrt5) / 3.0)};
    }
  }
  return {};
}

}  // namespace detail

inline ShapeMetrics shape_metrics(const CellShape& shape) {
  const double s = shape.size_param();
  ShapeMetrics m = detail::unit_metrics(shape.kind());
  m.measure *= std::pow(s, shape.dimension());
  m.inradius *= s;
  m.circumradius *= s;
  m.diameter *= s;
  m.adjacent_barycenter_distance *= s;
  m.adjacent_diameter *= s;
  return m;
}

// Measure of a cell with the given size parameter.
inline double cell_measure(ShapeKind kind, double size_param) {
  return shape_metrics(CellShape(kind, size_param)).measure;
}

// ---------------------------------------------------------------------------
// Balls and lenses

inline double ball_measure(int dimension, double radius) {
  if (dimension == 2) return std::numbers::pi * radius * radius;
  if (dimension == 3) return 4.0 * std::numbers::pi / 3.0 * radius * radius * radius;
  throw InvalidArgument("dimension must be 2 or 3");
}

class SphereLensSpec {
 public:
  SphereLensSpec(double radius, double center_distance, int dimension)
      : radius_(radius), center_distance_(center_distance), dimension_(dimension) {
    if (!(radius > 0.0)) throw InvalidArgument("lens radius must be positive");
    if (!(center_distance >= 0.0) || center_distance > 2.0 * radius) {
      throw InvalidArgument("lens center distance must lie in [0, 2R]");
    }
    if (dimension != 2 && dimension != 3) throw InvalidArgument("lens dimension must be 2 or 3");
  }

  double radius() const { return radius_; }
  double center_distance() const { return center_distance_; }
  int dimension() const { return dimension_; }

 private:
  double radius_;
  double center_distance_;
  int dimension_;
};

// Overlap of two equal balls (discs in 2D) whose centers are t apart.
inline double lens_measure(const SphereLensSpec& spec) {
  const double r = spec.radius();
  const double t = spec.center_distance();
  if (spec.dimension() == 3) {
    const double gap = 2.0 * r - t;
    return std::numbers::pi / 12.0 * (4.0 * r + t) * gap * gap;
  }
  const double half = std::clamp(t / (2.0 * r), 0.0, 1.0);
  return 2.0 * r * r * std::acos(half) - 0.5 * t * std::sqrt(std::max(0.0, 4.0 * r * r - t * t));
}

// ---------------------------------------------------------------------------
// Placed convex cells

struct HalfSpace {
  Vec3 normal;  // outward unit normal
  double offset = 0.0;  // points p with dot(normal, p) <= offset are inside
};

// A convex polygon (z = 0) or polyhedron with concrete coordinates.
class Polytope {
 public:
  // Builds the facet description from the vertex set.  Throws
  // InvalidGeometry if the vertices do not span a full-dimensional body.
  static Polytope from_vertices(int dimension, std::vector<Vec3> vertices) {
    if (dimension != 2 && dimension != 3) throw InvalidGeometry("dimension must be 2 or 3");
    Polytope p;
    p.dimension_ = dimension;
    p.vertices_ = std::move(vertices);
    if (p.vertices_.size() < static_cast<std::size_t>(dimension + 1)) {
      throw InvalidGeometry("too few vertices for a full-dimensional cell");
    }
    p.lo_ = p.hi_ = p.vertices_.front();
    for (const Vec3& v : p.vertices_) {
      for (std::size_t a = 0; a < 3; ++a) {
        p.lo_[a] = std::min(p.lo_[a], v[a]);
        p.hi_[a] = std::max(p.hi_[a], v[a]);
      }
    }
    double extent = 0.0;
    for (int a = 0; a < dimension; ++a) extent = std::max(extent, p.hi_[a] - p.lo_[a]);
    if (!(extent > 0.0)) throw InvalidGeometry("degenerate cell: zero extent");
    p.tolerance_ = 1e-9 * extent;
    p.centroid_ = {};
    for (const Vec3& v : p.vertices_) p.centroid_ += v;
    p.centroid_ *= 1.0 / static_cast<double>(p.vertices_.size());
    p.build_faces();
    if (p.faces_.size() < static_cast<std::size_t>(dimension + 1)) {
      throw InvalidGeometry("degenerate cell: vertices are not full-dimensional");
    }
    return p;
  }

  int dimension() const { return dimension_; }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<HalfSpace>& faces() const { return faces_; }
  // Mean of the vertices; the barycenter for every regular cell.
  const Vec3& vertex_centroid() const { return centroid_; }
  const Vec3& box_min() const { return lo_; }
  const Vec3& box_max() const { return hi_; }

  bool contains(const Vec3& p) const {
    for (const HalfSpace& f : faces_) {
      if (dot(f.normal, p) > f.offset + tolerance_) return false;
    }
    return true;
  }

  Polytope translated(const Vec3& shift) const {
    std::vector<Vec3> vs = vertices_;
    for (Vec3& v : vs) v += shift;
    return from_vertices(dimension_, std::move(vs));
  }

  Polytope scaled_about(const Vec3& center, double factor) const {
    if (!(factor > 0.0)) throw InvalidGeometry("scale factor must be positive");
    std::vector<Vec3> vs = vertices_;
    for (Vec3& v : vs) v = center + (v - center) * factor;
    return from_vertices(dimension_, std::move(vs));
  }

  // Reflection of the cell through its face `face_index`.
  Polytope mirrored(std::size_t face_index = 0) const {
    if (face_index >= faces_.size()) throw InvalidArgument("face index out of range");
    const HalfSpace& f = faces_[face_index];
    std::vector<Vec3> vs = vertices_;
    for (Vec3& v : vs) v -= f.normal * (2.0 * (dot(f.normal, v) - f.offset));
    return from_vertices(dimension_, std::move(vs));
  }

 private:
  void add_face(Vec3 n, double h) {
    for (const HalfSpace& f : faces_) {
      if (norm2(f.normal - n) < 1e-12) return;
    }
    faces_.push_back({n, h});
  }

  bool supports(const Vec3& n, double h) const {
    for (const Vec3& v : vertices_) {
      if (dot(n, v) > h + tolerance_) return false;
    }
    return true;
  }

  void build_faces() {
    const std::size_t n = vertices_.size();
    if (dimension_ == 2) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const Vec3 d = vertices_[j] - vertices_[i];
          Vec3 nrm{d.y, -d.x, 0.0};
          const double len = norm(nrm);
          if (len <= tolerance_) continue;
          nrm *= 1.0 / len;
          double h = dot(nrm, vertices_[i]);
          if (supports(nrm, h)) add_face(nrm, h);
          nrm = -nrm;
          h = -h;
          if (supports(nrm, h)) add_face(nrm, h);
        }
      }
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          Vec3 nrm = cross(vertices_[j] - vertices_[i], vertices_[k] - vertices_[i]);
          const double len = norm(nrm);
          if (len <= tolerance_ * tolerance_) continue;
          nrm *= 1.0 / len;
          double h = dot(nrm, vertices_[i]);
          if (supports(nrm, h)) add_face(nrm, h);
          nrm = -nrm;
          h = -h;
          if (supports(nrm, h)) add_face(nrm, h);
        }
      }
    }
  }

  int dimension_ = 2;
  std::vector<Vec3> vertices_;
  std::vector<HalfSpace> faces_;
  Vec3 lo_, hi_, centroid_;
  double tolerance_ = 0.0;
};

// Vertices of the shape with its barycenter at the origin.
inline std::vector<Vec3> canonical_vertices(const CellShape& shape) {
  const double s = shape.size_param();
  std::vector<Vec3> v;
  switch (shape.kind()) {
    case ShapeKind::Square:
      v = {{-0.5, -0.5, 0}, {0.5, -0.5, 0}, {0.5, 0.5, 0}, {-0.5, 0.5, 0}};
      break;
    case ShapeKind::EquilateralTriangle: {
      const double half_side = 1.0 / detail::kSqrt3;
      v = {{-half_side, -1.0 / 3.0, 0}, {half_side, -1.0 / 3.0, 0}, {0, 2.0 / 3.0, 0}};
      break;
    }
    case ShapeKind::RegularHexagon:
      for (int k = 0; k < 6; ++k) {
        const double a = std::numbers::pi / 6.0 + k * std::numbers::pi / 3.0;
        v.push_back({std::cos(a), std::sin(a), 0});
      }
      break;
    case ShapeKind::Cube:
      for (double x : {-0.5, 0.5})
        for (double y : {-0.5, 0.5})
          for (double z : {-0.5, 0.5}) v.push_back({x, y, z});
      break;
    case ShapeKind::RegularTetrahedron: {
      const double c = 0.5 / detail::kSqrt2;
      v = {{c, c, c}, {c, -c, -c}, {-c, c, -c}, {-c, -c, c}};
      break;
    }
    case ShapeKind::RegularOctahedron: {
      const double c = 1.0 / detail::kSqrt2;
      v = {{c, 0, 0}, {-c, 0, 0}, {0, c, 0}, {0, -c, 0}, {0, 0, c}, {0, 0, -c}};
      break;
    }
    case ShapeKind::RegularDodecahedron: {
      const double phi = std::numbers::phi;
      for (double x : {-1.0, 1.0})
        for (double y : {-1.0, 1.0})
          for (double z : {-1.0, 1.0}) v.push_back({x, y, z});
      for (double a : {-1.0, 1.0}) {
        for (double b : {-1.0, 1.0}) {
          v.push_back({0, a / phi, b * phi});
          v.push_back({a / phi, b * phi, 0});
          v.push_back({b * phi, 0, a / phi});
        }
      }
      for (Vec3& p : v) p *= phi / 2.0;  // edge 2/phi -> 1
      break;
    }
    case ShapeKind::RegularIcosahedron: {
      const double phi = std::numbers::phi;
      for (double a : {-1.0, 1.0}) {
        for (double b : {-phi, phi}) {
          v.push_back({0, a, b});
          v.push_back({a, b, 0});
          v.push_back({b, 0, a});
        }
      }
      for (Vec3& p : v) p *= 0.5;  // edge 2 -> 1
      break;
    }
  }
  for (Vec3& p : v) p *= s;
  return v;
}

inline Polytope place(const CellShape& shape, const Vec3& barycenter = {}) {
  std::vector<Vec3> v = canonical_vertices(shape);
  for (Vec3& p : v) p += barycenter;
  return Polytope::from_vertices(shape.dimension(), std::move(v));
}

// ---------------------------------------------------------------------------
// Sampling oracles

inline constexpr std::size_t kMinOracleSamples = 10'000;
inline constexpr std::size_t kMinUnionSamples = 1'000'000;

// Uniform rejection sampling inside the bounding box of `cell`.
inline std::vector<Vec3> sample_inside(const Polytope& cell, std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(cell.box_min().x, cell.box_max().x);
  std::uniform_real_distribution<double> uy(cell.box_min().y, cell.box_max().y);
  std::uniform_real_distribution<double> uz(cell.box_min().z, cell.box_max().z);
  std::vector<Vec3> out;
  out.reserve(count);
  const bool planar = cell.dimension() == 2;
  while (out.size() < count) {
    Vec3 p{ux(rng), uy(rng), planar ? cell.box_min().z : uz(rng)};
    if (cell.contains(p)) out.push_back(p);
  }
  return out;
}

struct FarthestPair {
  double distance = 0.0;
  std::size_t a = 0;  // index into the first set
  std::size_t b = 0;  // index into the second set
};

namespace detail {

// Median-split k-d tree with tight boxes, used only for farthest-pair search.
class BoxTree {
 public:
  struct Node {
    Vec3 lo, hi;
    std::size_t begin = 0, end = 0;
    int left = -1, right = -1;
  };

  explicit BoxTree(std::span<const Vec3> pts) : entries_(pts.size()) {
    for (std::size_t i = 0; i < pts.size(); ++i) entries_[i] = {pts[i], i};
    nodes_.reserve(2 * pts.size() / kLeaf + 2);
    build(0, entries_.size());
  }

  const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::size_t index(std::size_t k) const { return entries_[k].index; }
  const Vec3& point(std::size_t k) const { return entries_[k].p; }

  static constexpr std::size_t kLeaf = 24;

 private:
  // points are stored in tree order so leaf scans stay contiguous
  struct Entry {
    Vec3 p;
    std::size_t index;
  };

  int build(std::size_t begin, std::size_t end) {
    Node n;
    n.begin = begin;
    n.end = end;
    n.lo = n.hi = entries_[begin].p;
    for (std::size_t k = begin; k < end; ++k) {
      const Vec3& p = entries_[k].p;
      for (std::size_t a = 0; a < 3; ++a) {
        n.lo[a] = std::min(n.lo[a], p[a]);
        n.hi[a] = std::max(n.hi[a], p[a]);
      }
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(n);
    if (end - begin > kLeaf) {
      std::size_t axis = 0;
      for (std::size_t a = 1; a < 3; ++a)
        if (n.hi[a] - n.lo[a] > n.hi[axis] - n.lo[axis]) axis = a;
      const std::size_t mid = begin + (end - begin) / 2;
      const auto first = entries_.begin();
      std::nth_element(first + static_cast<std::ptrdiff_t>(begin), first + static_cast<std::ptrdiff_t>(mid),
                       first + static_cast<std::ptrdiff_t>(end),
                       [axis](const Entry& x, const Entry& y) { return x.p[axis] < y.p[axis]; });
      const int l = build(begin, mid);
      const int r = build(mid, end);
      nodes_[static_cast<std::size_t>(id)].left = l;
      nodes_[static_cast<std::size_t>(id)].right = r;
    }
    return id;
  }

  std::vector<Entry> entries_;
  std::vector<Node> nodes_;
};

inline double box_max_distance2(const BoxTree::Node& a, const BoxTree::Node& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double d = std::max(a.hi[k] - b.lo[k], b.hi[k] - a.lo[k]);
    s += d * d;
  }
  return s;
}

}  // namespace detail

// Exact maximum of |a - b| over all pairs (dual-tree branch and bound).
// Ties go to the lexicographically smallest index pair.  Both sets must be
// non-empty.
inline FarthestPair farthest_pair(std::span<const Vec3> a, std::span<const Vec3> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("farthest_pair needs two non-empty point sets");
  const detail::BoxTree ta(a);
  const bool same = a.data() == b.data() && a.size() == b.size();
  const std::optional<detail::BoxTree> own_b = same ? std::nullopt : std::optional<detail::BoxTree>(std::in_place, b);
  const detail::BoxTree& tb = same ? ta : *own_b;
  double best2 = -1.0;
  std::size_t best_a = 0, best_b = 0;

  auto visit = [&](auto&& self, int na, int nb) -> void {
    const auto& A = ta.node(na);
    const auto& B = tb.node(nb);
    if (detail::box_max_distance2(A, B) < best2) return;
    if (A.left < 0 && B.left < 0) {
      for (std::size_t i = A.begin; i < A.end; ++i) {
        const Vec3& p = ta.point(i);
        for (std::size_t j = B.begin; j < B.end; ++j) {
          const double d2 = distance2(p, tb.point(j));
          if (d2 < best2) continue;
          const std::size_t ia = ta.index(i), ib = tb.index(j);
          if (d2 > best2 || ia < best_a || (ia == best_a && ib < best_b)) {
            best2 = d2;
            best_a = ia;
            best_b = ib;
          }
        }
      }
      return;
    }
    // split the larger box; visit the more promising child first
    const bool split_a = B.left < 0 || (A.left >= 0 && (A.end - A.begin) >= (B.end - B.begin));
    if (split_a) {
      int c1 = A.left, c2 = A.right;
      if (detail::box_max_distance2(ta.node(c2), B) > detail::box_max_distance2(ta.node(c1), B)) std::swap(c1, c2);
      self(self, c1, nb);
      self(self, c2, nb);
    } else {
      int c1 = B.left, c2 = B.right;
      if (detail::box_max_distance2(A, tb.node(c2)) > detail::box_max_distance2(A, tb.node(c1))) std::swap(c1, c2);
      self(self, na, c1);
      self(self, na, c2);
    }
  };
  visit(visit, 0, 0);
  return {std::sqrt(best2), best_a, best_b};
}

inline double max_pair_distance(std::span<const Vec3> a, std::span<const Vec3> b) {
  if (a.empty() || b.empty()) return 0.0;
  return farthest_pair(a, b).distance;
}

struct OracleOptions {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 1;
  // Always add the cell's vertices to the sampled set; the maxima under test
  // are attained there.
  bool include_vertices = true;
};

namespace detail {

inline void check_samples(std::size_t samples, std::size_t minimum) {
  if (samples < minimum) {
    throw InvalidArgument("below minimum samples: got " + std::to_string(samples) + ", need at least " +
                          std::to_string(minimum));
  }
}

inline std::vector<Vec3> oracle_points(const Polytope& cell, const OracleOptions& opt, std::mt19937_64& rng) {
  std::vector<Vec3> pts = sample_inside(cell, opt.samples, rng);
  if (opt.include_vertices) pts.insert(pts.end(), cell.vertices().begin(), cell.vertices().end());
  return pts;
}

}  // namespace detail

// Largest sampled distance between a point of `a` and a point of `b`.
inline double max_distance_oracle(const Polytope& a, const Polytope& b, const OracleOptions& opt) {
  detail::check_samples(opt.samples, kMinOracleSamples);
  std::mt19937_64 rng(opt.seed);
  const auto pa = detail::oracle_points(a, opt, rng);
  if (&a == &b) return max_pair_distance(pa, pa);  // diameter: one sample set
  const auto pb = detail::oracle_points(b, opt, rng);
  return max_pair_distance(pa, pb);
}

// Largest sampled distance between a point of `a` and a fixed point.
inline double max_distance_oracle(const Polytope& a, const Vec3& point, const OracleOptions& opt) {
  detail::check_samples(opt.samples, kMinOracleSamples);
  std::mt19937_64 rng(opt.seed);
  const auto pa = detail::oracle_points(a, opt, rng);
  double best = 0.0;
  for (const Vec3& p : pa) best = std::max(best, distance(p, point));
  return best;
}

// Monte-Carlo barycenter: mean of uniform interior samples (vertices excluded).
inline Vec3 sampled_barycenter(const Polytope& cell, std::size_t samples, std::uint64_t seed) {
  detail::check_samples(samples, kMinOracleSamples);
  std::mt19937_64 rng(seed);
  const auto pts = sample_inside(cell, samples, rng);
  Vec3 sum{};
  for (const Vec3& p : pts) sum += p;
  return sum * (1.0 / static_cast<double>(pts.size()));
}

struct VolumeEstimate {
  friend bool operator==(const VolumeEstimate&, const VolumeEstimate&) = default;
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

// Volume of the union of n radius-R balls centered at (kR, 0, 0), k = 0..n-1.
inline VolumeEstimate sphere_chain_union_volume(std::size_t n, double radius, std::size_t samples,
                                                std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sphere chain needs at least one sphere");
  if (!(radius > 0.0)) throw InvalidArgument("sphere radius must be positive");
  detail::check_samples(samples, kMinUnionSamples);
  const double len_x = (static_cast<double>(n) + 1.0) * radius;
  const double box = len_x * 4.0 * radius * radius;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-radius, static_cast<double>(n) * radius);
  std::uniform_real_distribution<double> uyz(-radius, radius);
  const double r2 = radius * radius;
  const double last = static_cast<double>(n - 1);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = ux(rng), y = uyz(rng), z = uyz(rng);
    // Along a collinear chain the nearest center is the nearest along x.
    const double k = std::clamp(std::round(x / radius), 0.0, last);
    const double dx = x - k * radius;
    if (dx * dx + y * y + z * z <= r2) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples};
}

}  // namespace gafcell
