#pragma once

// Closed-form versus sampled cross-checks.  Every routine here places
// concrete cells and measures distances by sampling; none of them reads the
// closed-form tables it is compared against.

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gafcell/bounds.hpp"
#include "gafcell/geometry.hpp"

namespace gafcell {

struct Comparison {
  friend bool operator==(const Comparison&, const Comparison&) = default;
  std::string quantity;
  double closed_form = 0.0;
  double sampled = 0.0;
  double relative_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline Comparison compare(std::string quantity, double closed_form, double sampled, double tolerance) {
  Comparison c;
  c.quantity = std::move(quantity);
  c.closed_form = closed_form;
  c.sampled = sampled;
  c.relative_error = std::abs(sampled - closed_form) / std::abs(closed_form);
  c.tolerance = tolerance;
  c.pass = c.relative_error <= tolerance;
  return c;
}

struct MetricsVerification {
  friend bool operator==(const MetricsVerification&, const MetricsVerification&) = default;
  ShapeKind shape = ShapeKind::Square;
  std::vector<Comparison> checks;  // circumradius, diameter, adjacent_diameter, adjacent_barycenter_distance
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Samples a cell of size `size_param` and its face-mirror neighbour.
inline MetricsVerification verify_metrics(ShapeKind kind, double size_param, const OracleOptions& opt,
                                          double tolerance = 0.01) {
  const CellShape shape(kind, size_param);
  const ShapeMetrics closed = shape_metrics(shape);
  const Polytope cell = place(shape);
  const Polytope neighbour = cell.mirrored(0);

  MetricsVerification out;
  out.shape = kind;
  out.checks.push_back(compare("circumradius", closed.circumradius,
                               max_distance_oracle(cell, cell.vertex_centroid(), opt), tolerance));
  out.checks.push_back(compare("diameter", closed.diameter, max_distance_oracle(cell, cell, opt), tolerance));
  out.checks.push_back(
      compare("adjacent_diameter", closed.adjacent_diameter, max_distance_oracle(cell, neighbour, opt), tolerance));
  const Vec3 ca = sampled_barycenter(cell, opt.samples, opt.seed + 1);
  const Vec3 cb = sampled_barycenter(neighbour, opt.samples, opt.seed + 2);
  out.checks.push_back(compare("adjacent_barycenter_distance", closed.adjacent_barycenter_distance,
                               distance(ca, cb), tolerance));
  return out;
}

// Where an active node may be: a region (sampled) or an idealised point.
using ActiveRegion = std::variant<Polytope, Vec3>;

struct WorstCasePlacement {
  Polytope cell;
  Polytope neighbour;
  ActiveRegion active;            // in `cell`
  ActiveRegion neighbour_active;  // in `neighbour`
  ActiveRegion coverage_active;   // worst active region for the in-cell requirement
};

namespace detail {

inline Polytope square_box(const Vec3& lo, double side) {
  return Polytope::from_vertices(2, {lo, lo + Vec3{side, 0, 0}, lo + Vec3{side, side, 0}, lo + Vec3{0, side, 0}});
}

inline Vec3 lowest_vertex(const Polytope& p) {
  Vec3 best = p.vertices().front();
  for (const Vec3& v : p.vertices()) {
    if (v.y < best.y || (v.y == best.y && v.x < best.x)) best = v;
  }
  return best;
}

}  // namespace detail

// Worst-case active placement for a protocol at size parameter `size_param`.
inline WorstCasePlacement worst_case_placement(Protocol protocol, ShapeKind kind, double size_param,
                                               const SubcellRegime& regime) {
  if (!is_supported(protocol, kind)) throw Unsupported("unsupported protocol/shape pair");
  const CellShape shape(kind, size_param);
  const Polytope cell = place(shape);
  const Polytope neighbour = cell.mirrored(0);
  const Vec3 shift = neighbour.vertex_centroid() - cell.vertex_centroid();

  if (protocol == Protocol::GAF) return {cell, neighbour, cell, neighbour, cell};

  if (!regime.is_finite()) {
    if (protocol == Protocol::HGAF) {
      // A point at the same relative spot in both cells; for coverage the
      // spot is a corner.
      const Vec3 corner = detail::lowest_vertex(cell);
      return {cell, neighbour, corner, corner + shift, corner};
    }
    return {cell, neighbour, cell.vertex_centroid(), neighbour.vertex_centroid(), cell.vertex_centroid()};
  }

  const double d = regime.subcell_size();
  if (protocol == Protocol::HGAF) {
    // Corner subcell; the neighbour's active subcell is its translate.
    const Vec3 lo = detail::lowest_vertex(cell);
    const Polytope sub = detail::square_box(lo, d);
    return {cell, neighbour, sub, sub.translated(shift), sub};
  }
  // eHGAF: central subcell, a scaled copy about the barycenter.
  const double factor = d / size_param;
  const Polytope sub = cell.scaled_about(cell.vertex_centroid(), factor);
  const Polytope nsub = neighbour.scaled_about(neighbour.vertex_centroid(), factor);
  return {cell, neighbour, sub, nsub, sub};
}

inline double region_distance(const ActiveRegion& a, const ActiveRegion& b, const OracleOptions& opt) {
  if (const auto* pa = std::get_if<Polytope>(&a)) {
    if (const auto* pb = std::get_if<Polytope>(&b)) return max_distance_oracle(*pa, *pb, opt);
    return max_distance_oracle(*pa, std::get<Vec3>(b), opt);
  }
  if (const auto* pb = std::get_if<Polytope>(&b)) return max_distance_oracle(*pb, std::get<Vec3>(a), opt);
  return distance(std::get<Vec3>(a), std::get<Vec3>(b));
}

struct WorstCaseDistances {
  double req1 = 0.0;  // active to neighbouring active
  double req2 = 0.0;  // active to farthest point of its cell
};

inline WorstCaseDistances worst_case_distances(Protocol protocol, ShapeKind kind, double size_param,
                                               const SubcellRegime& regime, const OracleOptions& opt) {
  const WorstCasePlacement w = worst_case_placement(protocol, kind, size_param, regime);
  WorstCaseDistances out;
  out.req1 = region_distance(w.active, w.neighbour_active, opt);
  out.req2 = region_distance(w.coverage_active, ActiveRegion{w.cell}, opt);
  return out;
}

struct ConstraintVerification {
  friend bool operator==(const ConstraintVerification&, const ConstraintVerification&) = default;
  ConstraintReport report;
  Comparison req1_at_max;  // sampled Req.I distance at the Req.I maximum vs R
  Comparison req2_at_max;
  double req1_at_overshoot = 0.0;  // sampled distance at 1.05x the Req.I maximum
  double req2_at_overshoot = 0.0;
  bool pass() const {
    return req1_at_max.pass && req2_at_max.pass && req1_at_overshoot > report.range &&
           req2_at_overshoot > report.range;
  }
};

inline ConstraintVerification verify_constraints(Protocol protocol, ShapeKind kind, double range,
                                                 const SubcellRegime& regime, const OracleOptions& opt,
                                                 double tolerance = 0.01, double overshoot = 1.05) {
  ConstraintVerification v;
  v.report = max_cell(protocol, kind, range, regime);
  const double r1 = v.report.req1_max_size_param;
  const double r2 = v.report.req2_max_size_param;
  v.req1_at_max = compare("req1_distance", range, worst_case_distances(protocol, kind, r1, regime, opt).req1, tolerance);
  v.req2_at_max = compare("req2_distance", range, worst_case_distances(protocol, kind, r2, regime, opt).req2, tolerance);
  v.req1_at_overshoot = worst_case_distances(protocol, kind, r1 * overshoot, regime, opt).req1;
  v.req2_at_overshoot = worst_case_distances(protocol, kind, r2 * overshoot, regime, opt).req2;
  return v;
}

struct Lemma1Verification {
  friend bool operator==(const Lemma1Verification&, const Lemma1Verification&) = default;
  std::size_t cells = 1;
  double closed_form = 0.0;
  VolumeEstimate estimate;
  double relative_error = 0.0;
  double tolerance = 0.01;
  bool pass() const { return relative_error <= tolerance; }
};

inline Lemma1Verification verify_lemma1(std::size_t n, double range, std::size_t samples, std::uint64_t seed,
                                        double tolerance = 0.01) {
  Lemma1Verification v;
  v.cells = n;
  v.closed_form = lemma1_field_size(n, range);
  v.estimate = sphere_chain_union_volume(n, range, samples, seed);
  v.relative_error = std::abs(v.estimate.value - v.closed_form) / v.closed_form;
  v.tolerance = tolerance;
  return v;
}

}  // namespace gafcell
