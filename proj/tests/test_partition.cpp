#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "gafcell/partition.hpp"

using namespace gafcell;

namespace {

Field field2(double w, double h) { return Field{2, {0, 0, 0}, {w, h, 0}}; }

PartitionScheme scheme(ShapeKind s, double r, Protocol p = Protocol::GAF, std::optional<int> m = std::nullopt) {
  PartitionScheme sc;
  sc.protocol = p;
  sc.shape = s;
  sc.size_param = r;
  sc.subcells = m;
  return sc;
}

std::size_t interior_degree(const Partition& part, std::size_t i) { return part.adjacency()[i].size(); }

struct LatticeCase {
  ShapeKind shape;
  std::size_t max_degree;
};

}  // namespace

TEST(BuildPartition, SquareGrid) {
  const Partition part = build_partition(field2(10, 10), scheme(ShapeKind::Square, 2));
  EXPECT_EQ(part.cell_count(), 25u);
  for (std::size_t i = 0; i < part.cell_count(); ++i) {
    if (part.fully_inside(part.cells()[i])) {
      const auto& c = part.cells()[i];
      if (c[0] > 0 && c[0] < 4 && c[1] > 0 && c[1] < 4) {
        EXPECT_EQ(interior_degree(part, i), 4u);
      }
    }
  }
}

TEST(BuildPartition, CubeGrid) {
  const Field f{3, {0, 0, 0}, {4, 4, 4}};
  const Partition part = build_partition(f, scheme(ShapeKind::Cube, 1, Protocol::eHGAF));
  EXPECT_EQ(part.cell_count(), 64u);
  const auto pos = part.find({1, 2, 1});
  ASSERT_TRUE(pos.has_value());
  EXPECT_EQ(part.adjacency()[*pos].size(), 6u);
  EXPECT_EQ(part.adjacency()[*part.find({0, 0, 0})].size(), 3u);
}

TEST(BuildPartition, TriangleLatticeAlternates) {
  const Partition part = build_partition(field2(10, 10), scheme(ShapeKind::EquilateralTriangle, 1));
  std::size_t interior = 0;
  for (std::size_t i = 0; i < part.cell_count(); ++i) {
    const auto& idx = part.cells()[i];
    const Polytope g = part.cell_geometry(idx);
    // brute-force edge neighbours: cells sharing two vertices
    std::size_t shared_edges = 0;
    for (std::size_t j = 0; j < part.cell_count(); ++j) {
      if (j == i) continue;
      int common = 0;
      for (const Vec3& a : part.cell_vertices(idx))
        for (const Vec3& b : part.cell_vertices(part.cells()[j]))
          if (distance(a, b) < 1e-9) ++common;
      if (common == 2) {
        ++shared_edges;
        EXPECT_NE(idx[0] & 1, part.cells()[j][0] & 1) << "neighbours must alternate orientation";
        EXPECT_TRUE(std::find(part.adjacency()[i].begin(), part.adjacency()[i].end(), j) !=
                    part.adjacency()[i].end());
      }
    }
    EXPECT_EQ(shared_edges, part.adjacency()[i].size());
    if (part.fully_inside(idx) && shared_edges == 3) ++interior;
    EXPECT_GT(g.vertex_centroid().x, -2.0);
  }
  EXPECT_GT(interior, 20u);
}

TEST(BuildPartition, NonTilingShapesRejected) {
  for (ShapeKind s : {ShapeKind::RegularTetrahedron, ShapeKind::RegularOctahedron, ShapeKind::RegularDodecahedron,
                      ShapeKind::RegularIcosahedron}) {
    try {
      build_partition(Field{3, {}, {4, 4, 4}}, scheme(s, 1, Protocol::eHGAF));
      FAIL();
    } catch (const Unsupported& e) {
      EXPECT_NE(std::string(e.what()).find("no global tessellation supported"), std::string::npos);
    }
  }
}

TEST(BuildPartition, DimensionMismatchRejected) {
  EXPECT_THROW(build_partition(field2(4, 4), scheme(ShapeKind::Cube, 1)), InvalidArgument);
  EXPECT_THROW(build_partition(Field{3, {}, {4, 4, 4}}, scheme(ShapeKind::Square, 1)), InvalidArgument);
  EXPECT_THROW(build_partition(field2(0, 4), scheme(ShapeKind::Square, 1)), InvalidArgument);
  EXPECT_THROW(build_partition(field2(4, 4), scheme(ShapeKind::RegularHexagon, 1, Protocol::HGAF, 3)), Unsupported);
}

TEST(Locate, SquareExamples) {
  Partition part = build_partition(field2(10, 10), scheme(ShapeKind::Square, 2));
  EXPECT_EQ(part.locate({3.0, 1.0, 0}), (CellIndex{1, 0, 0}));
  EXPECT_EQ(part.locate({2.0, 1.0, 0}), (CellIndex{0, 0, 0}));
  part.set_offset({1.0, 0, 0});
  EXPECT_EQ(part.locate({3.0, 1.0, 0}), (CellIndex{0, 0, 0}));
  EXPECT_EQ(part.locate({0.5, 1.0, 0}), (CellIndex{-1, 0, 0}));
  EXPECT_THROW(part.locate({10.5, 1.0, 0}), InvalidArgument);
  EXPECT_THROW(part.locate({-0.1, 1.0, 0}), InvalidArgument);
}

TEST(Locate, FieldCornersResolve) {
  for (ShapeKind s : {ShapeKind::Square, ShapeKind::EquilateralTriangle, ShapeKind::RegularHexagon}) {
    const Partition part = build_partition(field2(7, 5), scheme(s, 1.3));
    for (Vec3 p : {Vec3{0, 0, 0}, Vec3{7, 0, 0}, Vec3{0, 5, 0}, Vec3{7, 5, 0}}) {
      EXPECT_NO_THROW(part.locate(p)) << to_string(s);
    }
  }
}

TEST(Offset, MustStayWithinHalfCell) {
  Partition part = build_partition(field2(10, 10), scheme(ShapeKind::Square, 2));
  EXPECT_NO_THROW(part.set_offset({-1.0, 1.0, 0}));
  EXPECT_THROW(part.set_offset({1.01, 0, 0}), InvalidArgument);
}

class LatticeProperties : public ::testing::TestWithParam<LatticeCase> {};

TEST_P(LatticeProperties, CoverAndDisjointUnderOffsetAndPhase) {
  const auto [shape, max_degree] = GetParam();
  const int dim = dimension_of(shape);
  const Field f = dim == 2 ? field2(9, 7) : Field{3, {}, {4, 3, 3}};
  Partition part = build_partition(f, scheme(shape, 1.5));
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> off(-0.75, 0.75);
  const std::size_t per_config = dim == 2 ? 25'000 : 12'500;
  std::size_t checked = 0;
  for (int config = 0; config < 4; ++config) {
    part.set_phase(config * 7);
    Vec3 o{off(rng), off(rng), dim == 3 ? off(rng) : 0.0};
    if (config == 0) o = {};
    part.set_offset(o);
    std::vector<Polytope> geom;
    for (const auto& c : part.cells()) geom.push_back(part.cell_geometry(c));
    std::uniform_real_distribution<double> ux(0, f.extent.x), uy(0, f.extent.y), uz(0, f.extent.z);
    for (std::size_t k = 0; k < per_config; ++k) {
      const Vec3 p{ux(rng), uy(rng), dim == 3 ? uz(rng) : 0.0};
      const std::size_t home = part.locate_position(p);
      ASSERT_TRUE(geom[home].contains(p));
      int containing = 0;
      for (const Polytope& g : geom) containing += g.contains(p) ? 1 : 0;
      ASSERT_EQ(containing, 1) << "point " << p.x << "," << p.y << "," << p.z;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 4 * per_config);
}

TEST_P(LatticeProperties, LocateCentroidRoundTrips) {
  const auto [shape, max_degree] = GetParam();
  const int dim = dimension_of(shape);
  const Field f = dim == 2 ? field2(9, 7) : Field{3, {}, {4, 3, 3}};
  Partition part = build_partition(f, scheme(shape, 1.5));
  part.set_offset({0.3, -0.2, dim == 3 ? 0.1 : 0.0});
  for (const auto& c : part.cells()) {
    const Vec3 centre = part.centroid(c);
    if (!f.contains(centre)) continue;
    EXPECT_EQ(part.locate(centre), c);
  }
}

TEST_P(LatticeProperties, AdjacencySymmetricIrreflexiveBounded) {
  const auto [shape, max_degree] = GetParam();
  const int dim = dimension_of(shape);
  const Partition part = build_partition(dim == 2 ? field2(9, 7) : Field{3, {}, {4, 3, 3}}, scheme(shape, 1.0));
  const auto& adj = part.adjacency();
  std::size_t max_seen = 0;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    EXPECT_LE(adj[i].size(), max_degree);
    max_seen = std::max(max_seen, adj[i].size());
    for (std::size_t j : adj[i]) {
      EXPECT_NE(i, j);
      EXPECT_TRUE(std::find(adj[j].begin(), adj[j].end(), i) != adj[j].end());
      // facet neighbours are one face-mirror apart
      const double spacing = shape_metrics(CellShape(shape, 1.0)).adjacent_barycenter_distance;
      EXPECT_NEAR(distance(part.centroid(part.cells()[i]), part.centroid(part.cells()[j])), spacing, 1e-9);
    }
  }
  EXPECT_EQ(max_seen, max_degree);
}

TEST_P(LatticeProperties, CellsTileTheField) {
  const auto [shape, max_degree] = GetParam();
  if (dimension_of(shape) == 3) {
    // cubes are axis-aligned, so clipping is a box intersection
    const Field f{3, {0.2, -0.3, 0.1}, {5, 4, 3.5}};
    const Partition part = build_partition(f, scheme(shape, 1.5));
    double volume = 0.0;
    for (const auto& c : part.cells()) {
      const auto verts = part.cell_vertices(c);
      double v = 1.0;
      for (int a = 0; a < 3; ++a) {
        double lo = verts[0][a], hi = verts[0][a];
        for (const Vec3& p : verts) {
          lo = std::min(lo, p[a]);
          hi = std::max(hi, p[a]);
        }
        v *= std::max(0.0, std::min(hi, f.upper()[a]) - std::max(lo, f.origin[a]));
      }
      volume += v;
    }
    EXPECT_NEAR(volume, f.measure(), 1e-9);
    return;
  }
  const Field f = field2(9, 7);
  const Partition part = build_partition(f, scheme(shape, 1.5));
  double area = 0.0;
  for (const auto& c : part.cells())
    area += detail::polygon_area(detail::clip_to_box(part.cell_vertices(c), f.origin, f.upper()));
  EXPECT_NEAR(area, f.measure(), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Lattices, LatticeProperties,
                         ::testing::Values(LatticeCase{ShapeKind::Square, 4},
                                           LatticeCase{ShapeKind::EquilateralTriangle, 3},
                                           LatticeCase{ShapeKind::RegularHexagon, 6}, LatticeCase{ShapeKind::Cube, 6}),
                         [](const auto& info) { return std::string(to_string(info.param.shape)); });

TEST(Rotation, RowMajorCycle) {
  const auto sc = scheme(ShapeKind::Square, 3, Protocol::HGAF, 3);
  EXPECT_EQ(rotation_position(sc, 0), (std::array<int, 3>{0, 0, 0}));
  EXPECT_EQ(rotation_position(sc, 4), (std::array<int, 3>{1, 1, 0}));
  EXPECT_EQ(rotation_position(sc, 9), (std::array<int, 3>{0, 0, 0}));
  EXPECT_EQ(rotation_position(sc, 1), (std::array<int, 3>{1, 0, 0}));
}

TEST(Rotation, TwoByTwoVisitsEverySubcellOnce) {
  const auto sc = scheme(ShapeKind::Square, 2, Protocol::HGAF, 2);
  std::set<std::array<int, 3>> seen;
  for (int ph = 0; ph < 4; ++ph) seen.insert(rotation_position(sc, ph));
  EXPECT_EQ(seen.size(), 4u);
}

TEST(Rotation, SynchronousAcrossCells) {
  const auto sc = scheme(ShapeKind::Square, 1.5, Protocol::HGAF, 3);
  Partition part = build_partition(field2(6, 6), sc);
  for (int ph = 0; ph < 9; ++ph) {
    part.set_phase(ph);
    const auto pos = rotation_position(sc, part.phase());
    std::set<std::array<double, 2>> rel;
    for (const auto& c : part.cells()) {
      const auto [lo, hi] = part.subcell_box(c, pos);
      const Vec3 base = part.cell_low(c);
      rel.insert({std::round((lo.x - base.x) * 1e9), std::round((lo.y - base.y) * 1e9)});
      const Vec3 mid = (lo + hi) * 0.5;
      EXPECT_EQ(part.locate_subcell(mid).sub, pos);
    }
    EXPECT_EQ(rel.size(), 1u);
  }
}

TEST(Rotation, ErrorsOutsideHgaf) {
  EXPECT_THROW(rotation_position(scheme(ShapeKind::Square, 3, Protocol::eHGAF, 3), 0), InvalidArgument);
  EXPECT_THROW(rotation_position(scheme(ShapeKind::Square, 3, Protocol::HGAF), 0), InvalidArgument);
}

TEST(Sliding, OffsetExamples) {
  const auto sc = scheme(ShapeKind::Square, 3, Protocol::eHGAF, 3);
  const double d = 1.0;
  const Vec3 o = sliding_offset_for(sc, {2, 1, 0});
  EXPECT_NEAR(o.x, d, 1e-15);
  EXPECT_NEAR(o.y, 0.0, 1e-15);
  const Vec3 c = sliding_offset_for(sc, {1, 1, 0});
  EXPECT_EQ(c.x, 0.0);
  EXPECT_EQ(c.y, 0.0);
  EXPECT_THROW(sliding_offset_for(scheme(ShapeKind::Square, 4, Protocol::eHGAF, 4), {0, 0, 0}), InvalidArgument);
  EXPECT_THROW(sliding_offset_for(scheme(ShapeKind::Square, 3, Protocol::HGAF, 3), {0, 0, 0}), InvalidArgument);
}

TEST(Sliding, ChosenSubcellBecomesCentre) {
  for (int m : {1, 3, 5, 7}) {
    const double r = 2.1;
    const auto sc = scheme(ShapeKind::Square, r, Protocol::eHGAF, m);
    const double d = r / m;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        Partition part = build_partition(field2(8.4, 8.4), sc);
        const auto cell = CellIndex{1, 1, 0};
        const auto [lo, hi] = part.subcell_box(cell, {i, j, 0});
        const Vec3 chosen_centre = (lo + hi) * 0.5;
        const Vec3 o = sliding_offset_for(sc, {i, j, 0});
        EXPECT_LE(std::abs(o.x), (m - 1) * d / 2 + 1e-15);
        EXPECT_LE(std::abs(o.y), (m - 1) * d / 2 + 1e-15);
        part.set_offset(o);
        EXPECT_LT(distance(part.centroid(cell), chosen_centre), 1e-12);
      }
    }
  }
}

TEST(Sliding, CubeOffsets) {
  const auto sc = scheme(ShapeKind::Cube, 3, Protocol::eHGAF, 3);
  const Vec3 o = sliding_offset_for(sc, {0, 1, 2});
  EXPECT_NEAR(o.x, -1.0, 1e-15);
  EXPECT_NEAR(o.y, 0.0, 1e-15);
  EXPECT_NEAR(o.z, 1.0, 1e-15);
}

TEST(CyclicSubcell, ThreeDimensionalOrder) {
  EXPECT_EQ(detail::cyclic_subcell(2, 3, 0), (std::array<int, 3>{0, 0, 0}));
  EXPECT_EQ(detail::cyclic_subcell(2, 3, 5), (std::array<int, 3>{1, 0, 1}));
  EXPECT_EQ(detail::cyclic_subcell(2, 3, 8), (std::array<int, 3>{0, 0, 0}));
  EXPECT_EQ(detail::cyclic_subcell(3, 2, -1), (std::array<int, 3>{2, 2, 0}));
}

TEST(AuditReq1, GafWorstCorners) {
  const double R = 1.0;
  for (double factor : {1.0, 1.05}) {
    const double r = factor * R / std::sqrt(5.0);
    const Partition part = build_partition(field2(2 * r, r), scheme(ShapeKind::Square, r));
    ASSERT_EQ(part.cell_count(), 2u);
    // bottom-left of the left cell, top-right of the right cell
    const std::vector<std::optional<Vec3>> actives = {Vec3{0, 0, 0}, Vec3{2 * r, r, 0}};
    const auto a = audit_req1(part, std::span<const std::optional<Vec3>>(actives), R);
    EXPECT_NEAR(a.worst_distance, factor * R, 1e-12);
    EXPECT_EQ(a.pass, factor == 1.0);
    ASSERT_TRUE(a.cells.has_value());
  }
}

TEST(AuditReq1, CentredActives) {
  const Partition part = build_partition(field2(5, 5), scheme(ShapeKind::Square, 1.0, Protocol::eHGAF));
  std::vector<std::optional<Vec3>> actives;
  for (const auto& c : part.cells()) actives.push_back(part.centroid(c));
  const auto a = audit_req1(part, std::span<const std::optional<Vec3>>(actives), 1.0);
  EXPECT_NEAR(a.worst_distance, 1.0, 1e-12);
  EXPECT_TRUE(a.pass);
}

TEST(AuditReq1, EmptyIsVacuousPass) {
  const Partition part = build_partition(field2(5, 5), scheme(ShapeKind::Square, 1.0));
  std::vector<std::optional<Vec3>> none(part.cell_count());
  const auto a = audit_req1(part, std::span<const std::optional<Vec3>>(none), 1.0);
  EXPECT_TRUE(a.pass);
  EXPECT_FALSE(a.cells.has_value());
  std::vector<std::optional<Vec3>> wrong(1);
  EXPECT_THROW(audit_req1(part, std::span<const std::optional<Vec3>>(wrong), 1.0), InvalidArgument);
}

TEST(AuditReq2, CentredActiveReachesCorners) {
  const Partition part = build_partition(field2(1, 1), scheme(ShapeKind::Square, 1.0, Protocol::eHGAF));
  const std::vector<std::optional<Vec3>> actives = {Vec3{0.5, 0.5, 0}};
  const std::vector<Vec3> nodes = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  const auto a = audit_req2(part, std::span<const std::optional<Vec3>>(actives), std::span<const Vec3>(nodes), 1.0);
  EXPECT_NEAR(a.worst_distance, std::sqrt(2.0) / 2, 1e-15);
  EXPECT_TRUE(a.pass);
}

TEST(AuditReq2, OppositeCornersFail) {
  const double r = 1 / std::sqrt(2.0) + 1e-6;
  const Partition part = build_partition(field2(r, r), scheme(ShapeKind::Square, r));
  const std::vector<std::optional<Vec3>> actives = {Vec3{0, 0, 0}};
  const std::vector<Vec3> nodes = {{0, 0, 0}, {r, r, 0}};
  const auto a = audit_req2(part, std::span<const std::optional<Vec3>>(actives), std::span<const Vec3>(nodes), 1.0);
  EXPECT_FALSE(a.pass);
  EXPECT_GT(a.worst_distance, 1.0);
}

TEST(AuditReq2, SingleNodeIsItsOwnActive) {
  const Partition part = build_partition(field2(1, 1), scheme(ShapeKind::Square, 1.0));
  const std::vector<std::optional<Vec3>> actives = {Vec3{0.3, 0.4, 0}};
  const std::vector<Vec3> nodes = {{0.3, 0.4, 0}};
  const auto a = audit_req2(part, std::span<const std::optional<Vec3>>(actives), std::span<const Vec3>(nodes), 1.0);
  EXPECT_EQ(a.worst_distance, 0.0);
  EXPECT_TRUE(a.pass);
}

TEST(AuditReq2, UncoveredCellFails) {
  const Partition part = build_partition(field2(2, 1), scheme(ShapeKind::Square, 1.0));
  const std::vector<std::optional<Vec3>> actives = {Vec3{0.5, 0.5, 0}, std::nullopt};
  const std::vector<Vec3> nodes = {{0.5, 0.5, 0}, {1.5, 0.5, 0}};
  const auto a = audit_req2(part, std::span<const std::optional<Vec3>>(actives), std::span<const Vec3>(nodes), 1.0);
  EXPECT_FALSE(a.pass);
  ASSERT_EQ(a.uncovered.size(), 1u);
  EXPECT_EQ(part.cells()[a.uncovered[0]], (CellIndex{1, 0, 0}));
  EXPECT_FALSE(a.worst_per_cell[1].has_value());
}

TEST(HgafGridSearch, AttainsClosedFormWorstCase) {
  for (double d : {0.05, 0.1, 0.15}) {
    const auto rep = max_cell(Protocol::HGAF, ShapeKind::Square, 1.0, SubcellRegime::finite(d));
    const double r = *rep.lattice_max_size_param;
    const int m = *rep.lattice_quotient;
    EXPECT_NEAR(hgaf_worst_req1_distance2(r, m), d * d + (r + d) * (r + d), 1e-6);
  }
  // one subcell is the whole cell: the plain corner-to-corner case
  EXPECT_NEAR(hgaf_worst_req1_distance2(0.4, 1), 5 * 0.16, 1e-12);
  EXPECT_THROW(hgaf_worst_req1_distance2(0.4, 0), InvalidArgument);
}

TEST(Geometry, PlainTextExport) {
  Partition part = build_partition(field2(4, 2), scheme(ShapeKind::Square, 2));
  part.set_phase(3);
  std::ostringstream os;
  part.write_geometry(os);
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("# gafcell-partition 1\n", 0), 0u);
  EXPECT_NE(s.find("# dimension 2 shape square size 2 cells 2 phase 3 offset 0 0"), std::string::npos);
  EXPECT_NE(s.find("cell 0 0 centroid 1 1 vertices 4"), std::string::npos);
  EXPECT_NE(s.find("cell 1 0 centroid 3 1 vertices 4"), std::string::npos);
}
