#pragma once

// Maximum energy-efficient cell sizes under the two connectivity
// requirements, plus the sphere-packing style upper bounds.
//
//   Req.I   active nodes of adjacent cells reach each other
//   Req.II  a cell's active node reaches every node of its cell
//
// Each requirement is solved for the largest size parameter separately;
// the cell is limited by the smaller of the two.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gafcell/error.hpp"
#include "gafcell/geometry.hpp"

namespace gafcell {

enum class Protocol { GAF, HGAF, eHGAF };

inline constexpr std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::GAF: return "gaf";
    case Protocol::HGAF: return "hgaf";
    case Protocol::eHGAF: return "ehgaf";
  }
  return "?";
}

inline std::optional<Protocol> parse_protocol(std::string_view s) {
  if (s == "gaf" || s == "GAF") return Protocol::GAF;
  if (s == "hgaf" || s == "HGAF") return Protocol::HGAF;
  if (s == "ehgaf" || s == "eHGAF" || s == "EHGAF") return Protocol::eHGAF;
  return std::nullopt;
}

// Subcell size: a finite d, or the d -> 0 limit in which the active subcell
// degenerates to a point.
class SubcellRegime {
 public:
  static SubcellRegime infinitesimal() { return SubcellRegime(); }
  static SubcellRegime finite(double d) {
    if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("subcell size d must be positive");
    SubcellRegime r;
    r.d_ = d;
    return r;
  }

  bool is_finite() const { return d_.has_value(); }
  double subcell_size() const {
    if (!d_) throw InvalidArgument("infinitesimal regime has no subcell size");
    return *d_;
  }
  friend bool operator==(const SubcellRegime&, const SubcellRegime&) = default;

 private:
  SubcellRegime() = default;
  std::optional<double> d_;
};

enum class Binding { ReqI, ReqII, Identical };

inline constexpr std::string_view to_string(Binding b) {
  switch (b) {
    case Binding::ReqI: return "ReqI";
    case Binding::ReqII: return "ReqII";
    case Binding::Identical: return "Identical";
  }
  return "?";
}

enum class Agreement { Match, Mismatch, NoReference };

inline constexpr std::string_view to_string(Agreement a) {
  switch (a) {
    case Agreement::Match: return "Match";
    case Agreement::Mismatch: return "Mismatch";
    case Agreement::NoReference: return "NoReference";
  }
  return "?";
}

struct ConstraintReport {
  friend bool operator==(const ConstraintReport&, const ConstraintReport&) = default;
  Protocol protocol = Protocol::GAF;
  ShapeKind shape = ShapeKind::Square;
  double range = 1.0;
  SubcellRegime regime = SubcellRegime::infinitesimal();
  double req1_max_size_param = 0.0;
  double req2_max_size_param = 0.0;
  Binding binding = Binding::ReqI;
  double combined_max_size_param = 0.0;
  double max_cell_measure = 0.0;
  // Measures a cell would have if only one requirement applied.
  double req1_measure = 0.0;
  double req2_measure = 0.0;
  std::optional<double> published_measure;
  Agreement agreement = Agreement::NoReference;
  std::string agreement_details;
  // Finite regime only: largest multiple m*d <= combined maximum with an
  // admissible quotient m.
  std::optional<double> lattice_max_size_param;
  std::optional<int> lattice_quotient;
};

struct PublishedValue {
  double coefficient;  // of R^dim
  double tolerance;
};

// Reported maxima for the infinitesimal (or subcell-free) configurations.
inline std::optional<PublishedValue> published_max_measure(Protocol p, ShapeKind s) {
  constexpr double kTol = 1e-3;
  const double sqrt3 = std::sqrt(3.0);
  switch (p) {
    case Protocol::GAF:
      if (s == ShapeKind::Square) return PublishedValue{1.0 / 5.0, kTol};
      if (s == ShapeKind::EquilateralTriangle) return PublishedValue{1.0 / (4.0 * sqrt3), kTol};
      if (s == ShapeKind::RegularHexagon) return PublishedValue{3.0 * sqrt3 / 26.0, kTol};
      return std::nullopt;
    case Protocol::HGAF:
      if (s == ShapeKind::Square) return PublishedValue{0.5, kTol};
      return std::nullopt;
    case Protocol::eHGAF:
      switch (s) {
        case ShapeKind::Square: return PublishedValue{1.0, kTol};
        case ShapeKind::EquilateralTriangle: return PublishedValue{3.0 * sqrt3 / 4.0, kTol};
        case ShapeKind::Cube: return PublishedValue{1.0, kTol};
        case ShapeKind::RegularTetrahedron: return PublishedValue{sqrt3, kTol};
        case ShapeKind::RegularOctahedron: return PublishedValue{0.866, kTol};
        case ShapeKind::RegularDodecahedron: return PublishedValue{0.694, kTol};
        // Printed as 0.627; the face-mirror closed form gives 0.6318.
        case ShapeKind::RegularIcosahedron: return PublishedValue{0.627, 5e-3};
        default: return std::nullopt;
      }
  }
  return std::nullopt;
}

inline bool is_supported(Protocol p, ShapeKind s) {
  switch (p) {
    case Protocol::GAF:
      return s == ShapeKind::Square || s == ShapeKind::EquilateralTriangle || s == ShapeKind::RegularHexagon;
    case Protocol::HGAF:
      return s == ShapeKind::Square;
    case Protocol::eHGAF:
      return s != ShapeKind::RegularHexagon;
  }
  return false;
}

// Whether subcell quotient m = r/d is admissible for the pair.
inline bool admissible_quotient(Protocol p, ShapeKind s, int m) {
  if (m < 1) return false;
  if (p == Protocol::HGAF) return true;
  if (p == Protocol::eHGAF && s == ShapeKind::Square) return m % 2 == 1;
  if (p == Protocol::eHGAF && s == ShapeKind::EquilateralTriangle) return m >= 4 && (m - 1) % 3 == 0;
  return false;
}

namespace detail {

inline void check_range(double range) {
  if (!(range > 0.0) || !std::isfinite(range)) throw InvalidArgument("communication range R must be positive");
}

inline void check_supported(Protocol p, ShapeKind s, const SubcellRegime& regime) {
  if (!is_supported(p, s)) {
    throw Unsupported("unsupported combination: protocol " + std::string(to_string(p)) + " with " +
                      std::string(to_string(s)) + " cells");
  }
  if (regime.is_finite()) {
    if (p == Protocol::GAF) throw Unsupported("gaf has no subcells; use the infinitesimal (default) regime");
    if (dimension_of(s) == 3) {
      throw Unsupported("unsupported combination: " + std::string(to_string(s)) +
                        " cells are analysed only with infinitesimal subcells");
    }
  }
}

inline Binding classify(double req1, double req2) {
  const double scale = std::max(std::abs(req1), std::abs(req2));
  if (std::abs(req1 - req2) <= 1e-12 * scale) return Binding::Identical;
  return req1 < req2 ? Binding::ReqI : Binding::ReqII;
}

inline void finish(ConstraintReport& rep) {
  rep.binding = classify(rep.req1_max_size_param, rep.req2_max_size_param);
  rep.combined_max_size_param = std::min(rep.req1_max_size_param, rep.req2_max_size_param);
  if (!(rep.combined_max_size_param > 0.0)) {
    throw InvalidArgument("subcell size d leaves no admissible cell size for R = " + std::to_string(rep.range));
  }
  rep.max_cell_measure = cell_measure(rep.shape, rep.combined_max_size_param);
  rep.req1_measure = rep.req1_max_size_param > 0.0 ? cell_measure(rep.shape, rep.req1_max_size_param) : 0.0;
  rep.req2_measure = rep.req2_max_size_param > 0.0 ? cell_measure(rep.shape, rep.req2_max_size_param) : 0.0;

  const bool comparable = rep.protocol == Protocol::GAF || !rep.regime.is_finite();
  const auto pub = published_max_measure(rep.protocol, rep.shape);
  if (!comparable || !pub) {
    rep.agreement = Agreement::NoReference;
    return;
  }
  const double scale = std::pow(rep.range, dimension_of(rep.shape));
  rep.published_measure = pub->coefficient * scale;
  const double coeff = rep.max_cell_measure / scale;
  const double diff = std::abs(coeff - pub->coefficient);
  if (diff <= pub->tolerance) {
    rep.agreement = Agreement::Match;
    rep.agreement_details = "coefficient " + std::to_string(coeff) + " vs published " +
                            std::to_string(pub->coefficient);
    return;
  }
  rep.agreement = Agreement::Mismatch;
  rep.agreement_details = "coefficient " + std::to_string(coeff) + " vs published " +
                          std::to_string(pub->coefficient) + " (|diff| " + std::to_string(diff) + " > " +
                          std::to_string(pub->tolerance) + ")";
  const double req1_coeff = rep.req1_measure / scale;
  if (std::abs(req1_coeff - pub->coefficient) <= pub->tolerance) {
    rep.agreement_details += "; published value equals the Req.I-only maximum";
  }
}

}  // namespace detail

// Largest cell for (protocol, shape) under radio range R.
inline ConstraintReport max_cell(Protocol protocol, ShapeKind shape, double range,
                                 const SubcellRegime& regime = SubcellRegime::infinitesimal()) {
  detail::check_range(range);
  detail::check_supported(protocol, shape, regime);

  ConstraintReport rep;
  rep.protocol = protocol;
  rep.shape = shape;
  rep.range = range;
  rep.regime = regime;
  const double R = range;
  const ShapeMetrics unit = detail::unit_metrics(shape);

  if (protocol == Protocol::GAF) {
    // The active node may sit anywhere in its cell.
    rep.req1_max_size_param = R / unit.adjacent_diameter;
    rep.req2_max_size_param = R / unit.diameter;
  } else if (!regime.is_finite()) {
    if (protocol == Protocol::HGAF) {
      // Same relative subcell everywhere: actives of adjacent cells are
      // exactly one cell apart, but the subcell may sit in a corner.
      rep.req1_max_size_param = R / unit.adjacent_barycenter_distance;
      rep.req2_max_size_param = R / unit.diameter;
    } else {
      // Active subcell pinned at the barycenter.
      rep.req1_max_size_param = R / unit.adjacent_barycenter_distance;
      rep.req2_max_size_param = R / unit.circumradius;
    }
  } else {
    const double d = regime.subcell_size();
    if (shape == ShapeKind::Square) {
      rep.req1_max_size_param = d < R ? std::sqrt(R * R - d * d) - d : 0.0;
      rep.req2_max_size_param = protocol == Protocol::HGAF ? R / std::sqrt(2.0) : std::sqrt(2.0) * R - d;
    } else {
      // Triangle of height h with a central up-triangle subcell of height d.
      rep.req1_max_size_param = 1.5 * R - 2.0 * d;
      const double disc = 9.0 * R * R - 3.0 * d * d;
      rep.req2_max_size_param = disc > 0.0 ? 0.5 * (std::sqrt(disc) - d) : 0.0;
    }
  }
  detail::finish(rep);

  if (regime.is_finite()) {
    const double d = regime.subcell_size();
    const int upper = static_cast<int>(std::floor(rep.combined_max_size_param / d * (1.0 + 1e-12)));
    int m = upper;
    while (m >= 1 && !admissible_quotient(protocol, shape, m)) --m;
    if (m < 1) {
      throw InvalidArgument("subcell size d = " + std::to_string(d) +
                            " admits no valid quotient r/d below the maximum cell size " +
                            std::to_string(rep.combined_max_size_param));
    }
    rep.lattice_quotient = m;
    rep.lattice_max_size_param = m * d;
  }
  return rep;
}

// Largest cell when the subcell count per axis m = r/d is fixed, so d
// shrinks with r.
inline ConstraintReport max_cell_for_quotient(Protocol protocol, ShapeKind shape, double range, int m) {
  detail::check_range(range);
  if (protocol == Protocol::GAF || dimension_of(shape) == 3 || !is_supported(protocol, shape)) {
    throw Unsupported("fixed subcell quotient is defined for hgaf square, ehgaf square and ehgaf triangle only");
  }
  if (!admissible_quotient(protocol, shape, m)) {
    throw InvalidArgument("quotient " + std::to_string(m) + " is not admissible for " +
                          std::string(to_string(protocol)) + " " + std::string(to_string(shape)));
  }
  const double R = range;
  const double f = 1.0 / m;
  ConstraintReport rep;
  rep.protocol = protocol;
  rep.shape = shape;
  rep.range = range;
  if (shape == ShapeKind::Square) {
    rep.req1_max_size_param = R / std::sqrt(f * f + (1.0 + f) * (1.0 + f));
    rep.req2_max_size_param = protocol == Protocol::HGAF ? R / std::sqrt(2.0) : std::sqrt(2.0) * R / (1.0 + f);
  } else {
    rep.req1_max_size_param = 1.5 * R / (1.0 + 2.0 * f);
    rep.req2_max_size_param = 1.5 * R / std::sqrt(1.0 + f + f * f);
  }
  rep.regime = SubcellRegime::finite(std::min(rep.req1_max_size_param, rep.req2_max_size_param) * f);
  detail::finish(rep);
  rep.lattice_quotient = m;
  rep.lattice_max_size_param = rep.combined_max_size_param;
  return rep;
}

// ---------------------------------------------------------------------------
// Upper bounds independent of cell shape

struct TheoremBound {
  friend bool operator==(const TheoremBound&, const TheoremBound&) = default;
  int dimension = 3;
  double range = 1.0;
  double single_cell_max = 0.0;
  double delta = 0.0;
  double asymptotic_avg = 0.0;
};

inline TheoremBound theoretical_upper_bound(int dimension, double range) {
  detail::check_range(range);
  if (dimension != 2 && dimension != 3) throw InvalidArgument("dimension must be 2 or 3");
  TheoremBound b;
  b.dimension = dimension;
  b.range = range;
  b.single_cell_max = ball_measure(dimension, range);
  b.delta = lens_measure(SphereLensSpec(range, range, dimension));
  b.asymptotic_avg = b.single_cell_max - b.delta;
  return b;
}

// Largest 3D field covered by n cells.
inline double lemma1_field_size(std::size_t n, double range) {
  if (n == 0) throw InvalidArgument("field must consist of at least one cell");
  detail::check_range(range);
  const double ball = ball_measure(3, range);
  const double delta = lens_measure(SphereLensSpec(range, range, 3));
  return static_cast<double>(n) * ball - static_cast<double>(n - 1) * delta;
}

// Largest volume a single cell removal can take off a 3D field.
inline double lemma2_decrement_bound(double range) {
  detail::check_range(range);
  return ball_measure(3, range) - lens_measure(SphereLensSpec(range, range, 3));
}

// |S_k| - |S_{k-1}| <= bound, with 1e-12 relative slack for rounding.
inline bool lemma2_holds(double size_k, double size_k_minus_1, double range) {
  const double bound = lemma2_decrement_bound(range);
  return size_k - size_k_minus_1 <= bound * (1.0 + 1e-12);
}

// ---------------------------------------------------------------------------
// Tables

struct LifetimeRow {
  friend bool operator==(const LifetimeRow&, const LifetimeRow&) = default;
  ShapeKind shape = ShapeKind::Cube;
  double cell_measure = 0.0;
  double percent_of_bound = 0.0;
};

inline constexpr std::array<ShapeKind, 5> kPolyhedra = {
    ShapeKind::RegularTetrahedron, ShapeKind::Cube, ShapeKind::RegularOctahedron,
    ShapeKind::RegularDodecahedron, ShapeKind::RegularIcosahedron,
};

// Lifetime relative to the asymptotic bound, taking lifetime proportional
// to cell measure (inverse of the active-node count).
inline std::vector<LifetimeRow> lifetime_table(double range, bool use_published_values) {
  const double bound = theoretical_upper_bound(3, range).asymptotic_avg;
  std::vector<LifetimeRow> rows;
  for (ShapeKind s : kPolyhedra) {
    LifetimeRow row;
    row.shape = s;
    if (use_published_values) {
      row.cell_measure = published_max_measure(Protocol::eHGAF, s)->coefficient * std::pow(range, 3);
    } else {
      row.cell_measure = max_cell(Protocol::eHGAF, s, range).max_cell_measure;
    }
    row.percent_of_bound = 100.0 * row.cell_measure / bound;
    rows.push_back(row);
  }
  return rows;
}

struct Table1Row {
  friend bool operator==(const Table1Row&, const Table1Row&) = default;
  std::string label;
  Protocol protocol = Protocol::GAF;
  ShapeKind shape = ShapeKind::Square;
  double max_measure = 0.0;
};

inline std::vector<Table1Row> table1(double range) {
  const std::array<std::tuple<const char*, Protocol, ShapeKind>, 4> rows = {{
      {"GAF", Protocol::GAF, ShapeKind::Square},
      {"HGAF", Protocol::HGAF, ShapeKind::Square},
      {"eHGAF", Protocol::eHGAF, ShapeKind::Square},
      {"eHGAF-triangle", Protocol::eHGAF, ShapeKind::EquilateralTriangle},
  }};
  std::vector<Table1Row> out;
  for (const auto& [label, p, s] : rows) {
    out.push_back({label, p, s, max_cell(p, s, range).max_cell_measure});
  }
  return out;
}

}  // namespace gafcell
