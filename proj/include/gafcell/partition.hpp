#pragma once

// Cell lattices over a rectangular (or box) field: square, triangle and
// hexagon lattices in 2D, cubes in 3D.  Cells clipped by the field box stay
// ordinary cells.  A partition also carries the HGAF rotation phase and the
// eHGAF sliding offset.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gafcell/bounds.hpp"
#include "gafcell/error.hpp"
#include "gafcell/geometry.hpp"
#include "gafcell/vec.hpp"

namespace gafcell {

struct Field {
  int dimension = 2;
  Vec3 origin{};
  Vec3 extent{1.0, 1.0, 0.0};

  void validate() const {
    if (dimension != 2 && dimension != 3) throw InvalidArgument("field dimension must be 2 or 3");
    for (int a = 0; a < dimension; ++a) {
      if (!(extent[a] > 0.0) || !std::isfinite(extent[a])) throw InvalidArgument("field extents must be positive");
    }
  }

  Vec3 upper() const {
    Vec3 u = origin + extent;
    if (dimension == 2) u.z = origin.z;
    return u;
  }

  bool contains(const Vec3& p) const {
    for (int a = 0; a < dimension; ++a) {
      if (p[a] < origin[a] || p[a] > origin[a] + extent[a]) return false;
    }
    return true;
  }

  double measure() const { return dimension == 2 ? extent.x * extent.y : extent.x * extent.y * extent.z; }
};

// Integer lattice coordinates of a cell.
//   square/cube  (i, j[, k]) along the axes
//   triangle     (2c + o, row): o = 0 for upward, 1 for downward triangles
//   hexagon      axial (q, s)
using CellIndex = std::array<int, 3>;

struct PartitionScheme {
  Protocol protocol = Protocol::GAF;
  ShapeKind shape = ShapeKind::Square;
  double size_param = 1.0;
  // Subcells per axis (r / d) for a finite subcell regime; unset means
  // no subcells (GAF) or the infinitesimal regime.
  std::optional<int> subcells;
  double rotation_epoch = 60.0;

  double subcell_size() const {
    if (!subcells) throw InvalidArgument("scheme has no finite subcells");
    return size_param / *subcells;
  }
};

struct SubcellIndex {
  CellIndex cell{};
  std::array<int, 3> sub{};
  friend bool operator==(const SubcellIndex&, const SubcellIndex&) = default;
};

inline bool has_lattice(ShapeKind s) {
  return s == ShapeKind::Square || s == ShapeKind::EquilateralTriangle || s == ShapeKind::RegularHexagon ||
         s == ShapeKind::Cube;
}

namespace detail {

inline constexpr double kBoundaryTol = 1e-12;

// Sutherland-Hodgman clip of a convex polygon to an axis-aligned box.
inline std::vector<Vec3> clip_to_box(std::vector<Vec3> poly, const Vec3& lo, const Vec3& hi) {
  for (int axis = 0; axis < 2; ++axis) {
    for (int side = 0; side < 2; ++side) {
      const double bound = side == 0 ? lo[axis] : hi[axis];
      auto inside = [&](const Vec3& p) { return side == 0 ? p[axis] >= bound : p[axis] <= bound; };
      std::vector<Vec3> out;
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec3& cur = poly[i];
        const Vec3& nxt = poly[(i + 1) % poly.size()];
        if (inside(cur)) out.push_back(cur);
        if (inside(cur) != inside(nxt)) {
          const double t = (bound - cur[axis]) / (nxt[axis] - cur[axis]);
          out.push_back(cur + (nxt - cur) * t);
        }
      }
      poly = std::move(out);
      if (poly.empty()) return poly;
    }
  }
  return poly;
}

inline double polygon_area(const std::vector<Vec3>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec3& p = poly[i];
    const Vec3& q = poly[(i + 1) % poly.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(a);
}

// Row-major cyclic subcell position, x fastest.
inline std::array<int, 3> cyclic_subcell(int m, int dimension, std::int64_t phase) {
  if (m < 1) throw InvalidArgument("subcell count must be positive");
  std::int64_t count = m;
  for (int a = 1; a < dimension; ++a) count *= m;
  std::int64_t idx = ((phase % count) + count) % count;
  std::array<int, 3> pos{0, 0, 0};
  for (int a = 0; a < dimension; ++a) {
    pos[a] = static_cast<int>(idx % m);
    idx /= m;
  }
  return pos;
}

}  // namespace detail

class Partition {
 public:
  Partition(Field field, PartitionScheme scheme) : field_(field), scheme_(scheme) {
    field_.validate();
    if (!has_lattice(scheme_.shape)) {
      throw Unsupported("no global tessellation supported for " + std::string(to_string(scheme_.shape)) +
                        " cells; analyse them per cell with the bounds module");
    }
    if (dimension_of(scheme_.shape) != field_.dimension) {
      throw InvalidArgument("dimension mismatch: " + std::string(to_string(scheme_.shape)) + " cells in a " +
                            std::to_string(field_.dimension) + "D field");
    }
    if (!(scheme_.size_param > 0.0)) throw InvalidGeometry("cell size must be positive");
    if (scheme_.subcells) {
      if (*scheme_.subcells < 1) throw InvalidArgument("subcell count must be positive");
      if (scheme_.shape != ShapeKind::Square && scheme_.shape != ShapeKind::Cube) {
        throw Unsupported("finite subcell grids are supported on square and cube lattices only");
      }
    }
    rebuild();
  }

  const Field& field() const { return field_; }
  const PartitionScheme& scheme() const { return scheme_; }
  int dimension() const { return field_.dimension; }

  // Cells intersecting the field with positive measure, sorted.
  const std::vector<CellIndex>& cells() const { return cells_; }
  std::size_t cell_count() const { return cells_.size(); }
  // Positions (into cells()) of the facet-sharing neighbours.
  const std::vector<std::vector<std::size_t>>& adjacency() const { return adjacency_; }

  std::optional<std::size_t> find(const CellIndex& idx) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), idx);
    if (it == cells_.end() || *it != idx) return std::nullopt;
    return static_cast<std::size_t>(it - cells_.begin());
  }

  std::int64_t phase() const { return phase_; }
  void set_phase(std::int64_t phase) { phase_ = phase; }

  const Vec3& offset() const { return offset_; }
  // Slides every boundary by `offset`; each component must lie in [-r/2, r/2].
  void set_offset(const Vec3& offset) {
    const double half = 0.5 * scheme_.size_param * (1.0 + 1e-12);
    for (int a = 0; a < dimension(); ++a) {
      if (std::abs(offset[a]) > half) throw InvalidArgument("sliding offset outside [-r/2, r/2]");
    }
    offset_ = offset;
    if (dimension() == 2) offset_.z = 0.0;
    rebuild();
  }

  // Unclipped vertices of a lattice cell (whether or not it meets the field).
  std::vector<Vec3> cell_vertices(const CellIndex& idx) const {
    const double r = scheme_.size_param;
    const Vec3 base = lattice_base();
    switch (scheme_.shape) {
      case ShapeKind::Square: {
        const Vec3 lo = base + Vec3{idx[0] * r, idx[1] * r, 0};
        return {lo, lo + Vec3{r, 0, 0}, lo + Vec3{r, r, 0}, lo + Vec3{0, r, 0}};
      }
      case ShapeKind::Cube: {
        const Vec3 lo = base + Vec3{idx[0] * r, idx[1] * r, idx[2] * r};
        std::vector<Vec3> v;
        for (int dz = 0; dz < 2; ++dz)
          for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx) v.push_back(lo + Vec3{dx * r, dy * r, dz * r});
        return v;
      }
      case ShapeKind::EquilateralTriangle: {
        const int c = floor_div(idx[0], 2);
        const int j = idx[1];
        if (idx[0] - 2 * c == 0) return {tri_vertex(c, j), tri_vertex(c + 1, j), tri_vertex(c, j + 1)};
        return {tri_vertex(c + 1, j), tri_vertex(c + 1, j + 1), tri_vertex(c, j + 1)};
      }
      case ShapeKind::RegularHexagon: {
        const Vec3 ctr = hex_center(idx);
        std::vector<Vec3> v;
        for (int k = 0; k < 6; ++k) {
          const double ang = std::numbers::pi / 6.0 + k * std::numbers::pi / 3.0;
          v.push_back(ctr + Vec3{r * std::cos(ang), r * std::sin(ang), 0});
        }
        return v;
      }
      default:
        break;
    }
    throw Unsupported("no lattice for shape");
  }

  Polytope cell_geometry(const CellIndex& idx) const {
    return Polytope::from_vertices(dimension(), cell_vertices(idx));
  }

  Vec3 centroid(const CellIndex& idx) const { return cell_geometry(idx).vertex_centroid(); }

  // Lowest corner of a square/cube cell.
  Vec3 cell_low(const CellIndex& idx) const {
    require_axis_lattice();
    const double r = scheme_.size_param;
    Vec3 lo = lattice_base();
    for (int a = 0; a < dimension(); ++a) lo[a] += idx[a] * r;
    return lo;
  }

  // Whether the whole (unclipped) cell lies inside the field.
  bool fully_inside(const CellIndex& idx) const {
    const double tol = 1e-9 * scheme_.size_param;
    const Vec3 lo = field_.origin, hi = field_.upper();
    for (const Vec3& v : cell_vertices(idx)) {
      for (int a = 0; a < dimension(); ++a) {
        if (v[a] < lo[a] - tol || v[a] > hi[a] + tol) return false;
      }
    }
    return true;
  }

  // Cell containing p.  On a shared boundary the lower lattice index wins.
  CellIndex locate(const Vec3& p) const {
    if (!field_.contains(p)) throw InvalidArgument("point outside field");
    const CellIndex guess = raw_locate(p);
    if (find(guess)) return guess;
    // Only reachable on the field boundary: fall back to a present
    // neighbour that contains the point.
    std::optional<CellIndex> best;
    for (const CellIndex& n : lattice_neighbours(guess, true)) {
      if (!find(n)) continue;
      if (!cell_geometry(n).contains(p)) continue;
      if (!best || n < *best) best = n;
    }
    if (!best) throw InvalidArgument("point could not be assigned to a cell");
    return *best;
  }

  std::size_t locate_position(const Vec3& p) const { return *find(locate(p)); }

  SubcellIndex locate_subcell(const Vec3& p) const {
    if (!scheme_.subcells) throw InvalidArgument("scheme has no finite subcells");
    SubcellIndex out;
    out.cell = locate(p);
    const Vec3 lo = cell_low(out.cell);
    const double d = scheme_.subcell_size();
    const int m = *scheme_.subcells;
    for (int a = 0; a < dimension(); ++a) {
      const int s = static_cast<int>(std::ceil((p[a] - lo[a]) / d - detail::kBoundaryTol)) - 1;
      out.sub[a] = std::clamp(s, 0, m - 1);
    }
    return out;
  }

  // Axis-aligned box of subcell `sub` within cell `idx`.
  std::pair<Vec3, Vec3> subcell_box(const CellIndex& idx, const std::array<int, 3>& sub) const {
    const double d = scheme_.subcell_size();
    Vec3 lo = cell_low(idx);
    for (int a = 0; a < dimension(); ++a) lo[a] += sub[a] * d;
    Vec3 hi = lo;
    for (int a = 0; a < dimension(); ++a) hi[a] += d;
    return {lo, hi};
  }

  // Lattice neighbours sharing a facet (present or not).
  std::vector<CellIndex> lattice_neighbours(const CellIndex& idx, bool include_diagonal = false) const {
    std::vector<CellIndex> out;
    switch (scheme_.shape) {
      case ShapeKind::Square:
      case ShapeKind::Cube: {
        const int dim = dimension();
        if (include_diagonal) {
          for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
              for (int dz = (dim == 3 ? -1 : 0); dz <= (dim == 3 ? 1 : 0); ++dz) {
                if (dx == 0 && dy == 0 && dz == 0) continue;
                out.push_back({idx[0] + dx, idx[1] + dy, idx[2] + dz});
              }
          return out;
        }
        for (int a = 0; a < dim; ++a) {
          for (int s : {-1, 1}) {
            CellIndex n = idx;
            n[a] += s;
            out.push_back(n);
          }
        }
        return out;
      }
      case ShapeKind::EquilateralTriangle: {
        const int c = floor_div(idx[0], 2);
        const int j = idx[1];
        if (idx[0] - 2 * c == 0) {
          out = {{2 * c + 1, j, 0}, {2 * (c - 1) + 1, j, 0}, {2 * c + 1, j - 1, 0}};
        } else {
          out = {{2 * c, j, 0}, {2 * (c + 1), j, 0}, {2 * c, j + 1, 0}};
        }
        if (include_diagonal) {
          for (int dc = -3; dc <= 3; ++dc)
            for (int dj = -1; dj <= 1; ++dj) out.push_back({idx[0] + dc, j + dj, 0});
        }
        return out;
      }
      case ShapeKind::RegularHexagon: {
        static constexpr std::array<std::array<int, 2>, 6> dirs = {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}}};
        for (const auto& d : dirs) out.push_back({idx[0] + d[0], idx[1] + d[1], 0});
        return out;
      }
      default:
        break;
    }
    return out;
  }

  // Writes one record per cell for external plotting:
  //   # gafcell-partition 1
  //   # dimension D shape NAME size R cells N phase P offset X Y [Z]
  //   cell I J [K] centroid X Y [Z] vertices V X1 Y1 [Z1] ...
  void write_geometry(std::ostream& os) const {
    const int dim = dimension();
    auto put = [&](const Vec3& p) {
      for (int a = 0; a < dim; ++a) os << ' ' << p[a];
    };
    const auto old_precision = os.precision(17);
    os << "# gafcell-partition 1\n";
    os << "# dimension " << dim << " shape " << to_string(scheme_.shape) << " size " << scheme_.size_param
       << " cells " << cells_.size() << " phase " << phase_ << " offset";
    put(offset_);
    os << '\n';
    for (const CellIndex& idx : cells_) {
      const std::vector<Vec3> verts = cell_vertices(idx);
      os << "cell";
      for (int a = 0; a < (dim == 3 ? 3 : 2); ++a) os << ' ' << idx[a];
      os << " centroid";
      put(Polytope::from_vertices(dim, verts).vertex_centroid());
      os << " vertices " << verts.size();
      for (const Vec3& v : verts) put(v);
      os << '\n';
    }
    os.precision(old_precision);
  }

 private:
  static int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

  Vec3 lattice_base() const { return field_.origin + offset_; }

  void require_axis_lattice() const {
    if (scheme_.shape != ShapeKind::Square && scheme_.shape != ShapeKind::Cube) {
      throw Unsupported("operation defined for square and cube lattices only");
    }
  }

  double tri_side() const { return 2.0 * scheme_.size_param / std::sqrt(3.0); }

  Vec3 tri_vertex(int c, int j) const {
    const double a = tri_side();
    return lattice_base() + Vec3{c * a + j * a / 2.0, j * scheme_.size_param, 0};
  }

  Vec3 hex_center(const CellIndex& idx) const {
    const double a = scheme_.size_param;
    return lattice_base() + Vec3{a * std::sqrt(3.0) * (idx[0] + idx[1] / 2.0), 1.5 * a * idx[1], 0};
  }

  // Index of the lowest cell whose closed region contains p.
  CellIndex raw_locate(const Vec3& p) const {
    const Vec3 q = p - lattice_base();
    const double r = scheme_.size_param;
    auto lower_cell = [](double u) { return static_cast<int>(std::ceil(u - detail::kBoundaryTol)) - 1; };
    switch (scheme_.shape) {
      case ShapeKind::Square:
      case ShapeKind::Cube: {
        CellIndex idx{0, 0, 0};
        for (int a = 0; a < dimension(); ++a) idx[a] = lower_cell(q[a] / r);
        return idx;
      }
      case ShapeKind::EquilateralTriangle: {
        const double v = q.y / r;
        const double u = q.x / tri_side() - v / 2.0;
        const int c = lower_cell(u);
        const int j = lower_cell(v);
        const double fu = u - c, fv = v - j;
        const int o = fu + fv <= 1.0 + detail::kBoundaryTol ? 0 : 1;
        return {2 * c + o, j, 0};
      }
      case ShapeKind::RegularHexagon: {
        const double a = r;
        const double sf = q.y / (1.5 * a);
        const double qf = q.x / (a * std::sqrt(3.0)) - sf / 2.0;
        const int q0 = static_cast<int>(std::floor(qf));
        const int s0 = static_cast<int>(std::floor(sf));
        CellIndex best{q0, s0, 0};
        double best_d = INFINITY;
        for (int dq = -1; dq <= 2; ++dq) {
          for (int ds = -1; ds <= 2; ++ds) {
            const CellIndex c{q0 + dq, s0 + ds, 0};
            const double d = distance(hex_center(c), p);
            if (d < best_d - 1e-12 * a || (std::abs(d - best_d) <= 1e-12 * a && c < best)) {
              best = c;
              best_d = std::min(best_d, d);
            }
          }
        }
        return best;
      }
      default:
        break;
    }
    throw Unsupported("no lattice for shape");
  }

  bool intersects_field(const CellIndex& idx) const {
    const Vec3 lo = field_.origin, hi = field_.upper();
    const std::vector<Vec3> verts = cell_vertices(idx);
    if (scheme_.shape == ShapeKind::Square || scheme_.shape == ShapeKind::Cube) {
      const double tol = 1e-12 * scheme_.size_param;
      const Vec3 clo = verts.front();
      for (int a = 0; a < dimension(); ++a) {
        const double overlap = std::min(hi[a], clo[a] + scheme_.size_param) - std::max(lo[a], clo[a]);
        if (overlap <= tol) return false;
      }
      return true;
    }
    const double full = detail::polygon_area(verts);
    return detail::polygon_area(detail::clip_to_box(verts, lo, hi)) > 1e-9 * full;
  }

  void rebuild() {
    cells_.clear();
    const double r = scheme_.size_param;
    const Vec3 q_lo = field_.origin - lattice_base();
    const Vec3 q_hi = field_.upper() - lattice_base();
    switch (scheme_.shape) {
      case ShapeKind::Square:
      case ShapeKind::Cube: {
        std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
        for (int a = 0; a < dimension(); ++a) {
          lo[a] = static_cast<int>(std::floor(q_lo[a] / r)) - 1;
          hi[a] = static_cast<int>(std::ceil(q_hi[a] / r)) + 1;
        }
        for (int i = lo[0]; i <= hi[0]; ++i)
          for (int j = lo[1]; j <= hi[1]; ++j)
            for (int k = lo[2]; k <= hi[2]; ++k) {
              const CellIndex idx{i, j, k};
              if (intersects_field(idx)) cells_.push_back(idx);
            }
        break;
      }
      case ShapeKind::EquilateralTriangle: {
        const int j_lo = static_cast<int>(std::floor(q_lo.y / r)) - 1;
        const int j_hi = static_cast<int>(std::ceil(q_hi.y / r)) + 1;
        const double a = tri_side();
        for (int j = j_lo; j <= j_hi; ++j) {
          const int c_lo = static_cast<int>(std::floor(q_lo.x / a - (j + 1) / 2.0)) - 2;
          const int c_hi = static_cast<int>(std::ceil(q_hi.x / a - j / 2.0)) + 2;
          for (int c = 2 * c_lo; c <= 2 * c_hi + 1; ++c) {
            const CellIndex idx{c, j, 0};
            if (intersects_field(idx)) cells_.push_back(idx);
          }
        }
        break;
      }
      case ShapeKind::RegularHexagon: {
        const int s_lo = static_cast<int>(std::floor(q_lo.y / (1.5 * r))) - 2;
        const int s_hi = static_cast<int>(std::ceil(q_hi.y / (1.5 * r))) + 2;
        const double w = r * std::sqrt(3.0);
        for (int s = s_lo; s <= s_hi; ++s) {
          const int q_min = static_cast<int>(std::floor(q_lo.x / w - s / 2.0)) - 2;
          const int q_max = static_cast<int>(std::ceil(q_hi.x / w - s / 2.0)) + 2;
          for (int q = q_min; q <= q_max; ++q) {
            const CellIndex idx{q, s, 0};
            if (intersects_field(idx)) cells_.push_back(idx);
          }
        }
        break;
      }
      default:
        break;
    }
    std::sort(cells_.begin(), cells_.end());
    adjacency_.assign(cells_.size(), {});
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      for (const CellIndex& n : lattice_neighbours(cells_[i])) {
        if (auto pos = find(n)) adjacency_[i].push_back(*pos);
      }
      std::sort(adjacency_[i].begin(), adjacency_[i].end());
    }
  }

  Field field_;
  PartitionScheme scheme_;
  std::vector<CellIndex> cells_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::int64_t phase_ = 0;
  Vec3 offset_{};
};

inline Partition build_partition(const Field& field, const PartitionScheme& scheme) { return Partition(field, scheme); }

// Active-subcell position shared by every HGAF cell at `phase`.
inline std::array<int, 3> rotation_position(const PartitionScheme& scheme, std::int64_t phase) {
  if (scheme.protocol != Protocol::HGAF || !scheme.subcells) {
    throw InvalidArgument("rotation positions are defined for hgaf schemes with finite subcells");
  }
  return detail::cyclic_subcell(*scheme.subcells, dimension_of(scheme.shape), phase);
}

// Boundary shift that makes `chosen` the central subcell of its cell.
inline Vec3 sliding_offset_for(const PartitionScheme& scheme, const std::array<int, 3>& chosen) {
  if (scheme.protocol != Protocol::eHGAF || !scheme.subcells) {
    throw InvalidArgument("sliding offsets are defined for ehgaf schemes with finite subcells");
  }
  const int m = *scheme.subcells;
  if (m % 2 == 0) throw InvalidArgument("sliding needs an odd subcell quotient, got " + std::to_string(m));
  const double d = scheme.subcell_size();
  const int dim = dimension_of(scheme.shape);
  Vec3 off{};
  for (int a = 0; a < dim; ++a) {
    if (chosen[a] < 0 || chosen[a] >= m) throw InvalidArgument("subcell coordinate out of range");
    off[a] = (chosen[a] - (m - 1) / 2) * d;
  }
  return off;
}

// ---------------------------------------------------------------------------
// Requirement audits on concrete positions

inline bool within_range(double distance, double range) { return distance <= range * (1.0 + 1e-12); }

struct Req1Audit {
  double worst_distance = 0.0;
  bool pass = true;
  // Worst adjacent pair (cell positions and points), when any pair exists.
  std::optional<std::pair<std::size_t, std::size_t>> cells;
  std::optional<std::pair<Vec3, Vec3>> points;
};

// Worst active-to-active distance over adjacent cells.  `actives[i]` holds
// every position the active node of cells()[i] may occupy (empty for a cell
// without one).
inline Req1Audit audit_req1(const Partition& part, std::span<const std::vector<Vec3>> actives, double range) {
  if (actives.size() != part.cell_count()) throw InvalidArgument("one active set per cell required");
  Req1Audit out;
  for (std::size_t i = 0; i < part.cell_count(); ++i) {
    if (actives[i].empty()) continue;
    for (std::size_t j : part.adjacency()[i]) {
      if (j < i || actives[j].empty()) continue;
      const FarthestPair fp = farthest_pair(actives[i], actives[j]);
      if (!out.cells || fp.distance > out.worst_distance) {
        out.worst_distance = fp.distance;
        out.cells = {i, j};
        out.points = {actives[i][fp.a], actives[j][fp.b]};
      }
    }
  }
  out.pass = within_range(out.worst_distance, range);
  return out;
}

inline Req1Audit audit_req1(const Partition& part, std::span<const std::optional<Vec3>> actives, double range) {
  std::vector<std::vector<Vec3>> sets(actives.size());
  for (std::size_t i = 0; i < actives.size(); ++i)
    if (actives[i]) sets[i].push_back(*actives[i]);
  return audit_req1(part, std::span<const std::vector<Vec3>>(sets), range);
}

struct Req2Audit {
  std::vector<std::optional<double>> worst_per_cell;  // unset when the cell has no nodes
  std::vector<std::size_t> uncovered;                 // cells with nodes but no active
  double worst_distance = 0.0;
  bool pass = true;
};

// Worst active-to-member distance in every cell.  `members[i]` are the node
// positions assigned to cells()[i].
inline Req2Audit audit_req2(const Partition& part, std::span<const std::vector<Vec3>> actives,
                            std::span<const std::vector<Vec3>> members, double range) {
  if (actives.size() != part.cell_count() || members.size() != part.cell_count()) {
    throw InvalidArgument("one active set and one member set per cell required");
  }
  Req2Audit out;
  out.worst_per_cell.resize(part.cell_count());
  for (std::size_t i = 0; i < part.cell_count(); ++i) {
    if (members[i].empty()) continue;
    if (actives[i].empty()) {
      out.uncovered.push_back(i);
      out.pass = false;
      continue;
    }
    const double w = max_pair_distance(actives[i], members[i]);
    out.worst_per_cell[i] = w;
    out.worst_distance = std::max(out.worst_distance, w);
    if (!within_range(w, range)) out.pass = false;
  }
  return out;
}

// Convenience form: one active per cell and a flat node list assigned via
// locate().
inline Req2Audit audit_req2(const Partition& part, std::span<const std::optional<Vec3>> actives,
                            std::span<const Vec3> nodes, double range) {
  std::vector<std::vector<Vec3>> sets(part.cell_count()), members(part.cell_count());
  for (std::size_t i = 0; i < actives.size() && i < sets.size(); ++i)
    if (actives[i]) sets[i].push_back(*actives[i]);
  for (const Vec3& p : nodes) members[part.locate_position(p)].push_back(p);
  return audit_req2(part, std::span<const std::vector<Vec3>>(sets), std::span<const std::vector<Vec3>>(members),
                    range);
}

// Exhaustive search over every rotation phase and every subcell-corner
// placement of two adjacent actives; returns the largest squared distance.
inline double hgaf_worst_req1_distance2(double r, int m) {
  if (m < 1) throw InvalidArgument("subcell count must be positive");
  Field field{2, {0, 0, 0}, {2 * r, 2 * r, 0}};
  PartitionScheme scheme{Protocol::HGAF, ShapeKind::Square, r, m, 1.0};
  Partition part(field, scheme);
  double worst = 0.0;
  for (std::int64_t phase = 0; phase < static_cast<std::int64_t>(m) * m; ++phase) {
    const auto pos = rotation_position(scheme, phase);
    for (std::size_t i = 0; i < part.cell_count(); ++i) {
      const auto [alo, ahi] = part.subcell_box(part.cells()[i], pos);
      for (std::size_t j : part.adjacency()[i]) {
        const auto [blo, bhi] = part.subcell_box(part.cells()[j], pos);
        for (int ca = 0; ca < 4; ++ca) {
          const Vec3 pa{(ca & 1) ? ahi.x : alo.x, (ca & 2) ? ahi.y : alo.y, 0};
          for (int cb = 0; cb < 4; ++cb) {
            const Vec3 pb{(cb & 1) ? bhi.x : blo.x, (cb & 2) ? bhi.y : blo.y, 0};
            worst = std::max(worst, distance2(pa, pb));
          }
        }
      }
    }
  }
  return worst;
}

}  // namespace gafcell
