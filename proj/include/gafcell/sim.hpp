#pragma once

// Fixed-step simulation of the GAF state machine over a cell lattice.
//
// Two active-node models:
//  * real: GAF, and HGAF/eHGAF with finite subcells.  Only nodes in the
//    current active subcell are eligible; eHGAF slides the boundaries every
//    rotation epoch and nodes are relocated.
//  * idealised: HGAF/eHGAF with infinitesimal subcells.  Any node of a cell
//    may be elected (it stands in for the vanishing active subcell) and the
//    audits use the ideal active point: a rotating grid point for HGAF, the
//    cell barycenter for eHGAF.
//
// Sleeping nodes are advanced lazily: a sleeper is stepped once, over its
// whole sleep span, at the step in which it wakes (or dies).  Sleepers ignore
// their inbox, so this matches stepping them every dt.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gafcell/bounds.hpp"
#include "gafcell/error.hpp"
#include "gafcell/partition.hpp"
#include "gafcell/protocol.hpp"

namespace gafcell {

enum class LifetimeScope { AllCells, InteriorCells };
// Candidates: every node the protocol could elect right now (eligible live
// nodes plus current actives).  Elected: current Active nodes only.
enum class AuditMode { Candidates, Elected };

inline constexpr std::string_view to_string(LifetimeScope s) {
  return s == LifetimeScope::AllCells ? "all" : "interior";
}
inline constexpr std::string_view to_string(AuditMode m) { return m == AuditMode::Candidates ? "candidates" : "elected"; }

inline std::optional<LifetimeScope> parse_lifetime_scope(std::string_view s) {
  if (s == "all") return LifetimeScope::AllCells;
  if (s == "interior") return LifetimeScope::InteriorCells;
  return std::nullopt;
}
inline std::optional<AuditMode> parse_audit_mode(std::string_view s) {
  if (s == "candidates") return AuditMode::Candidates;
  if (s == "elected") return AuditMode::Elected;
  return std::nullopt;
}

struct SimConfig {
  Field field;
  PartitionScheme scheme;
  ProtocolParams params;
  double range = 1.0;
  std::size_t nodes = 100;
  std::uint64_t seed = 1;
  std::optional<double> time_step;  // default T_d / 10
  double max_time = 10'000.0;
  double audit_interval = 10.0;
  LifetimeScope lifetime_scope = LifetimeScope::AllCells;
  AuditMode audit_mode = AuditMode::Candidates;
  bool stop_at_first_death = true;
  // Idealised HGAF: ideal active points per axis, evenly spaced corner to corner.
  int rotation_points = 2;
  // Reject cells larger than the binding maximum.
  bool strict = false;

  double step() const { return time_step.value_or(params.t_discovery / 10.0); }

  bool idealised() const { return scheme.protocol != Protocol::GAF && !scheme.subcells; }

  void validate() const {
    field.validate();
    params.validate();
    detail::check_range(range);
    if (nodes < 1) throw InvalidArgument("node count must be at least 1");
    const double dt = step();
    const double limit = std::min({params.t_discovery, params.t_active, params.t_sleep}) / 10.0;
    if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
      throw InvalidArgument("time step must be positive and at most min(T_d, T_a, T_s)/10 = " +
                            std::to_string(limit));
    }
    if (!(max_time > 0.0)) throw InvalidArgument("max time must be positive");
    if (!(audit_interval > 0.0)) throw InvalidArgument("audit interval must be positive");
    if (!(scheme.rotation_epoch > 0.0)) throw InvalidArgument("rotation epoch must be positive");
    if (!is_supported(scheme.protocol, scheme.shape)) {
      throw Unsupported("unsupported combination: protocol " + std::string(to_string(scheme.protocol)) + " with " +
                        std::string(to_string(scheme.shape)) + " cells");
    }
    if (dimension_of(scheme.shape) == 3 && scheme.shape != ShapeKind::Cube) {
      throw Unsupported("no global tessellation supported for " + std::string(to_string(scheme.shape)) +
                        " cells; only cube lattices are simulated in 3D");
    }
    if (scheme.subcells) {
      if (scheme.protocol == Protocol::GAF) throw InvalidArgument("gaf schemes have no subcells");
      if (!admissible_quotient(scheme.protocol, scheme.shape, *scheme.subcells) ||
          scheme.shape != ShapeKind::Square) {
        throw Unsupported("subcell quotient " + std::to_string(*scheme.subcells) + " is not simulated for " +
                          std::string(to_string(scheme.protocol)) + " " + std::string(to_string(scheme.shape)));
      }
    }
    if (rotation_points < 2) throw InvalidArgument("rotation points per axis must be at least 2");
    if (strict) {
      const ConstraintReport rep = scheme.subcells
                                       ? max_cell_for_quotient(scheme.protocol, scheme.shape, range, *scheme.subcells)
                                       : max_cell(scheme.protocol, scheme.shape, range);
      if (scheme.size_param > rep.combined_max_size_param * (1.0 + 1e-9)) {
        throw InvalidArgument("cell size " + std::to_string(scheme.size_param) + " exceeds the binding maximum " +
                              std::to_string(rep.combined_max_size_param));
      }
    }
  }
};

struct AuditRecord {
  double time = 0.0;
  std::size_t active_count = 0;
  std::size_t live_count = 0;
  std::size_t nonempty_cells = 0;  // cells holding a live node
  bool exactly_one_active = false;  // every such cell has one Active node
  double req1_worst = 0.0;
  double req2_worst = 0.0;
  bool req1_pass = true;
  bool req2_pass = true;
  std::size_t uncovered_cells = 0;
  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

struct CellDeath {
  CellIndex cell{};
  double time = 0.0;
  friend bool operator==(const CellDeath&, const CellDeath&) = default;
};

struct SimReport {
  std::uint64_t seed = 0;
  std::size_t nodes = 0;
  double time_step = 0.0;
  double end_time = 0.0;
  std::size_t cells = 0;           // at deployment
  std::size_t nonempty_cells = 0;  // at deployment
  double lifetime_first_cell_death = 0.0;
  bool censored = false;  // no cell died; lifetime is the end time
  double lifetime_model_estimate = 0.0;
  double initial_energy = 0.0;
  double energy_consumed = 0.0;
  double energy_from_draws = 0.0;  // sum of time-in-state x draw
  double req1_pass_rate = 1.0;
  double req2_pass_rate = 1.0;
  double single_active_fraction = 1.0;
  std::vector<AuditRecord> audits;
  std::vector<CellDeath> cell_deaths;

  double energy_ledger_error() const {
    const double scale = std::max(std::abs(energy_consumed), 1e-300);
    return std::abs(energy_consumed - energy_from_draws) / scale;
  }

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

inline std::vector<Vec3> deploy(const SimConfig& config) {
  config.field.validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec3> out;
  out.reserve(config.nodes);
  for (std::size_t i = 0; i < config.nodes; ++i) {
    Vec3 p = config.field.origin;
    for (int a = 0; a < config.field.dimension; ++a) p[a] += unit(rng) * config.field.extent[a];
    out.push_back(p);
  }
  return out;
}

namespace detail {

class Simulation {
 public:
  explicit Simulation(const SimConfig& cfg)
      : cfg_(cfg), part_(cfg.field, cfg.scheme), dt_(cfg.step()), dim_(cfg.field.dimension) {}

  SimReport run() {
    const std::vector<Vec3> positions = deploy(cfg_);
    nodes_.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
      nodes_.push_back(make_node(static_cast<int>(i), positions[i], {}, cfg_.params));
    }
    cell_of_.assign(nodes_.size(), 0);
    sub_of_.assign(nodes_.size(), {0, 0, 0});
    wake_step_.assign(nodes_.size(), -1);

    report_.seed = cfg_.seed;
    report_.nodes = nodes_.size();
    report_.time_step = dt_;
    report_.initial_energy = cfg_.params.battery * static_cast<double>(nodes_.size());

    begin_epoch(0, 0.0, true);
    report_.cells = part_.cell_count();
    report_.nonempty_cells = static_cast<std::size_t>(std::count(nonempty_.begin(), nonempty_.end(), true));
    report_.lifetime_model_estimate = static_cast<double>(nodes_.size()) * cfg_.params.battery /
                                      (static_cast<double>(report_.nonempty_cells) * cfg_.params.draw_active);

    const std::int64_t last_step = static_cast<std::int64_t>(std::ceil(cfg_.max_time / dt_ - 1e-9));
    std::int64_t next_epoch = 1;
    std::int64_t next_audit = 1;
    std::int64_t j = 0;
    bool stop = false;
    for (; j < last_step && !stop; ++j) {
      const double t = static_cast<double>(j) * dt_;
      if (has_epochs() && t >= static_cast<double>(next_epoch) * cfg_.scheme.rotation_epoch * (1.0 - 1e-12)) {
        begin_epoch(next_epoch, t, false);
        ++next_epoch;
      }
      if (t >= static_cast<double>(next_audit) * cfg_.audit_interval * (1.0 - 1e-12)) {
        audit(t);
        ++next_audit;
      }
      step_all(j);
      if (cfg_.stop_at_first_death && first_death_) stop = true;
      if (live_total_ == 0) stop = true;
    }
    const double end = static_cast<double>(j) * dt_;
    finish(end);
    return std::move(report_);
  }

 private:
  bool has_epochs() const {
    if (cfg_.scheme.protocol == Protocol::HGAF) return true;
    return cfg_.scheme.protocol == Protocol::eHGAF && cfg_.scheme.subcells.has_value();
  }

  double node_battery_at(const NodeRuntime& n, double t) const {
    if (n.state != NodeState::Sleeping) return n.battery;
    return n.battery - cfg_.params.draw_sleeping * std::max(0.0, t - n.clock);
  }
  bool live_at(const NodeRuntime& n, double t) const { return n.alive() && node_battery_at(n, t) > 0.0; }

  // Advances a sleeper to time t without waking it early.
  void flush(std::size_t i, double t) {
    NodeRuntime& n = nodes_[i];
    if (!n.alive() || n.state != NodeState::Sleeping) return;
    const double elapsed = t - n.clock;
    if (elapsed <= 0.0) return;
    StepResult r = step(n, elapsed, {}, cfg_.params);
    n = r.node;
    if (n.alive()) n.clock = t;
    wake_step_[i] = -1;
    if (!n.alive()) on_death(i);
  }

  void begin_epoch(std::int64_t epoch, double t, bool initial) {
    const auto& scheme = cfg_.scheme;
    const bool real_subcells = scheme.subcells.has_value();
    if (!initial && real_subcells) {
      for (std::size_t i = 0; i < nodes_.size(); ++i) flush(i, t);
    }
    phase_ = epoch;
    part_.set_phase(epoch);
    bool relocate = initial;
    if (scheme.protocol == Protocol::eHGAF && real_subcells) {
      const auto chosen = cyclic_subcell(*scheme.subcells, dim_, epoch);
      part_.set_offset(sliding_offset_for(scheme, chosen));
      relocate = true;
    }
    if (relocate) {
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        NodeRuntime& n = nodes_[i];
        cell_of_[i] = part_.locate_position(n.position);
        n.cell = part_.cells()[cell_of_[i]];
        if (real_subcells) sub_of_[i] = part_.locate_subcell(n.position).sub;
      }
      rebuild_cell_tracking(t);
    }
    if (real_subcells) {
      std::array<int, 3> target{0, 0, 0};
      if (scheme.protocol == Protocol::HGAF) {
        target = rotation_position(scheme, epoch);
      } else {
        const int c = (*scheme.subcells - 1) / 2;
        for (int a = 0; a < dim_; ++a) target[a] = c;
      }
      for (std::size_t i = 0; i < nodes_.size(); ++i) nodes_[i].eligible = sub_of_[i] == target;
    }
    if (initial || real_subcells) {
      // every live node rejoins the election
      inbox_.assign(part_.cell_count(), {});
      touched_.clear();
      awake_.clear();
      sleepers_ = {};
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!nodes_[i].alive()) continue;
        if (!initial) restart_discovery(nodes_[i]);
        wake_step_[i] = -1;
        awake_.push_back(i);
      }
    }
  }

  void rebuild_cell_tracking(double t) {
    const std::size_t nc = part_.cell_count();
    live_in_cell_.assign(nc, 0);
    nonempty_.assign(nc, false);
    in_scope_.assign(nc, true);
    dead_recorded_.assign(nc, false);
    live_total_ = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      nonempty_[cell_of_[i]] = true;
      if (live_at(nodes_[i], t)) {
        ++live_in_cell_[cell_of_[i]];
        ++live_total_;
      }
    }
    if (cfg_.lifetime_scope == LifetimeScope::InteriorCells) {
      for (std::size_t c = 0; c < nc; ++c) in_scope_[c] = part_.fully_inside(part_.cells()[c]);
    }
    for (std::size_t c = 0; c < nc; ++c) {
      if (nonempty_[c] && live_in_cell_[c] == 0) record_cell_death(c, t);
    }
  }

  void record_cell_death(std::size_t c, double t) {
    if (dead_recorded_[c]) return;
    dead_recorded_[c] = true;
    report_.cell_deaths.push_back({part_.cells()[c], t});
    if (in_scope_[c] && (!first_death_ || t < *first_death_)) first_death_ = t;
  }

  void on_death(std::size_t i) {
    const std::size_t c = cell_of_[i];
    --live_total_;
    if (--live_in_cell_[c] == 0 && nonempty_[c]) record_cell_death(c, *nodes_[i].death_time);
  }

  std::int64_t sleep_steps(const NodeRuntime& n) const {
    // smallest k with timer + k*dt past the sleep timeout (same test as step())
    const double remaining = cfg_.params.t_sleep * (1.0 - 1e-9) - n.timer;
    std::int64_t steps = static_cast<std::int64_t>(std::ceil(remaining / dt_));
    if (cfg_.params.draw_sleeping > 0.0) {
      const double to_death = n.battery / (cfg_.params.draw_sleeping * dt_);
      steps = std::min(steps, static_cast<std::int64_t>(std::ceil(to_death)));
    }
    return std::max<std::int64_t>(steps, 1);
  }

  void step_all(std::int64_t j) {
    const double t_end = static_cast<double>(j + 1) * dt_;
    // sleepers due this step
    std::vector<std::size_t> due;
    while (!sleepers_.empty() && sleepers_.top().first <= j) {
      const auto [when, i] = sleepers_.top();
      sleepers_.pop();
      if (wake_step_[i] == when) due.push_back(i);
    }
    std::sort(due.begin(), due.end());
    std::vector<std::size_t> order;
    order.reserve(awake_.size() + due.size());
    std::merge(awake_.begin(), awake_.end(), due.begin(), due.end(), std::back_inserter(order));

    std::vector<std::vector<DiscoveryMessage>> next(inbox_.size());
    std::vector<std::size_t> next_touched;
    std::vector<std::size_t> still_awake;
    still_awake.reserve(order.size());
    static const std::vector<DiscoveryMessage> kEmpty;
    for (std::size_t i : order) {
      NodeRuntime& n = nodes_[i];
      if (!n.alive()) continue;
      wake_step_[i] = -1;
      const std::size_t c = cell_of_[i];
      const double elapsed = t_end - n.clock;
      StepResult r = step(n, elapsed, n.state == NodeState::Sleeping ? kEmpty : inbox_[c], cfg_.params);
      n = r.node;
      if (!n.alive()) {
        on_death(i);
        continue;
      }
      n.clock = t_end;
      for (const DiscoveryMessage& m : r.outbox) {
        if (next[c].empty()) next_touched.push_back(c);
        next[c].push_back(m);
      }
      if (n.state == NodeState::Sleeping) {
        wake_step_[i] = j + sleep_steps(n);
        sleepers_.push({wake_step_[i], i});
      } else {
        still_awake.push_back(i);
      }
    }
    awake_ = std::move(still_awake);
    for (std::size_t c : touched_) inbox_[c].clear();
    touched_ = std::move(next_touched);
    for (std::size_t c : touched_) inbox_[c] = std::move(next[c]);
  }

  Vec3 ideal_point(std::size_t c) const {
    const CellIndex& idx = part_.cells()[c];
    if (cfg_.scheme.protocol == Protocol::eHGAF) return part_.centroid(idx);
    // HGAF: rotating grid point, corners included
    const int g = cfg_.rotation_points;
    const auto pos = cyclic_subcell(g, dim_, phase_);
    Vec3 p = part_.cell_low(idx);
    for (int a = 0; a < dim_; ++a) p[a] += pos[a] * cfg_.scheme.size_param / (g - 1);
    return p;
  }

  void audit(double t) {
    const std::size_t nc = part_.cell_count();
    std::vector<std::vector<Vec3>> members(nc), candidates(nc);
    std::vector<std::size_t> actives(nc, 0);
    AuditRecord rec;
    rec.time = t;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const NodeRuntime& n = nodes_[i];
      if (!live_at(n, t)) continue;
      const std::size_t c = cell_of_[i];
      members[c].push_back(n.position);
      ++rec.live_count;
      const bool active = n.state == NodeState::Active;
      if (active) {
        ++actives[c];
        ++rec.active_count;
      }
      if (!cfg_.idealised() && (active || (cfg_.audit_mode == AuditMode::Candidates && n.eligible))) {
        candidates[c].push_back(n.position);
      }
    }
    rec.exactly_one_active = true;
    for (std::size_t c = 0; c < nc; ++c) {
      if (members[c].empty()) continue;
      ++rec.nonempty_cells;
      if (actives[c] != 1) rec.exactly_one_active = false;
      if (cfg_.idealised() && (cfg_.audit_mode == AuditMode::Candidates || actives[c] > 0)) {
        candidates[c].push_back(ideal_point(c));
      }
    }
    const Req1Audit a1 = audit_req1(part_, std::span<const std::vector<Vec3>>(candidates), cfg_.range);
    const Req2Audit a2 = audit_req2(part_, std::span<const std::vector<Vec3>>(candidates),
                                    std::span<const std::vector<Vec3>>(members), cfg_.range);
    rec.req1_worst = a1.worst_distance;
    rec.req1_pass = a1.pass;
    rec.req2_worst = a2.worst_distance;
    rec.req2_pass = a2.pass;
    rec.uncovered_cells = a2.uncovered.size();
    report_.audits.push_back(rec);
  }

  void finish(double end) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) flush(i, end);
    report_.end_time = end;
    if (first_death_) {
      report_.lifetime_first_cell_death = *first_death_;
    } else {
      report_.lifetime_first_cell_death = end;
      report_.censored = true;
    }
    for (const NodeRuntime& n : nodes_) {
      report_.energy_consumed += cfg_.params.battery - n.battery;
      for (NodeState s : {NodeState::Sleeping, NodeState::Discovery, NodeState::Active}) {
        report_.energy_from_draws += n.time_in_state[static_cast<int>(s)] * cfg_.params.draw(s);
      }
    }
    const auto& audits = report_.audits;
    if (!audits.empty()) {
      const auto count = [&](auto pred) {
        return static_cast<double>(std::count_if(audits.begin(), audits.end(), pred));
      };
      report_.req1_pass_rate = count([](const AuditRecord& a) { return a.req1_pass; }) / audits.size();
      report_.req2_pass_rate = count([](const AuditRecord& a) { return a.req2_pass; }) / audits.size();
    }
    // after the first discovery window, before the first cell death
    std::size_t considered = 0, single = 0;
    for (const AuditRecord& a : audits) {
      if (a.time < cfg_.params.t_discovery + dt_ || a.time >= report_.lifetime_first_cell_death) continue;
      ++considered;
      if (a.exactly_one_active) ++single;
    }
    report_.single_active_fraction = considered ? static_cast<double>(single) / considered : 1.0;
  }

  SimConfig cfg_;
  Partition part_;
  double dt_;
  int dim_;
  std::int64_t phase_ = 0;
  std::vector<NodeRuntime> nodes_;
  std::vector<std::size_t> cell_of_;
  std::vector<std::array<int, 3>> sub_of_;
  std::vector<std::int64_t> wake_step_;
  std::vector<std::size_t> awake_;
  std::priority_queue<std::pair<std::int64_t, std::size_t>, std::vector<std::pair<std::int64_t, std::size_t>>,
                      std::greater<>>
      sleepers_;
  std::vector<std::vector<DiscoveryMessage>> inbox_;
  std::vector<std::size_t> touched_;
  std::vector<std::size_t> live_in_cell_;
  std::vector<bool> nonempty_, in_scope_, dead_recorded_;
  std::size_t live_total_ = 0;
  std::optional<double> first_death_;
  SimReport report_;
};

}  // namespace detail

inline SimReport run(const SimConfig& config) {
  config.validate();
  return detail::Simulation(config).run();
}

// ---------------------------------------------------------------------------
// Lifetime comparison across schemes

struct LifetimeSummary {
  std::string label;
  double cell_measure = 0.0;
  std::vector<double> lifetimes;  // one per seed
  double mean = 0.0;
  double stddev = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t censored_runs = 0;
  // Relative to the reference (largest-measure) configuration.
  double predicted_ratio = 0.0;
  double measured_ratio = 0.0;
  double ratio_ci_low = 0.0;
  double ratio_ci_high = 0.0;
  double relative_deviation = 0.0;  // measured / predicted - 1
  friend bool operator==(const LifetimeSummary&, const LifetimeSummary&) = default;
};

struct LifetimeComparison {
  std::vector<std::uint64_t> seeds;
  std::size_t reference = 0;
  double confidence = 0.95;
  std::vector<LifetimeSummary> rows;
  friend bool operator==(const LifetimeComparison&, const LifetimeComparison&) = default;
};

namespace detail {

// Two-sided 95% Student t quantile.
inline double t95(std::size_t df) {
  static constexpr std::array<double, 30> table = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179, 2.160, 2.145, 2.131,
      2.120,  2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (df == 0) return INFINITY;
  if (df <= table.size()) return table[df - 1];
  return 1.96;
}

struct MeanCi {
  double mean = 0.0, sd = 0.0, low = 0.0, high = 0.0;
};

inline MeanCi mean_ci(std::span<const double> xs) {
  MeanCi r;
  const double n = static_cast<double>(xs.size());
  r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.sd = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const double half = t95(xs.size() - 1) * r.sd / std::sqrt(n);
  r.low = r.mean - half;
  r.high = r.mean + half;
  return r;
}

inline std::string scheme_label(const PartitionScheme& s) {
  std::string out = std::string(to_string(s.protocol)) + "-" + std::string(to_string(s.shape));
  if (s.subcells) out += "-m" + std::to_string(*s.subcells);
  return out;
}

}  // namespace detail

inline LifetimeComparison compare_lifetimes(std::span<const SimConfig> configs, std::span<const std::uint64_t> seeds) {
  if (configs.empty()) throw InvalidArgument("no configurations to compare");
  if (seeds.size() < 3) throw InvalidArgument("lifetime comparison needs at least 3 seeds");
  const SimConfig& first = configs.front();
  for (const SimConfig& c : configs) {
    const bool same_field = c.field.dimension == first.field.dimension && c.field.origin == first.field.origin &&
                            c.field.extent == first.field.extent;
    if (!same_field) throw InvalidArgument("compared configurations must share the field");
    if (c.nodes != first.nodes) throw InvalidArgument("compared configurations must share the node count");
    if (c.range != first.range) throw InvalidArgument("compared configurations must share R");
    if (!(c.params == first.params)) throw InvalidArgument("compared configurations must share protocol parameters");
  }
  LifetimeComparison out;
  out.seeds.assign(seeds.begin(), seeds.end());
  for (const SimConfig& c : configs) {
    LifetimeSummary row;
    row.label = detail::scheme_label(c.scheme);
    row.cell_measure = cell_measure(c.scheme.shape, c.scheme.size_param);
    for (std::uint64_t seed : seeds) {
      SimConfig run_cfg = c;
      run_cfg.seed = seed;
      const SimReport rep = run(run_cfg);
      row.lifetimes.push_back(rep.lifetime_first_cell_death);
      if (rep.censored) ++row.censored_runs;
    }
    const detail::MeanCi ci = detail::mean_ci(row.lifetimes);
    row.mean = ci.mean;
    row.stddev = ci.sd;
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    out.rows.push_back(std::move(row));
  }
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    if (out.rows[i].cell_measure > out.rows[out.reference].cell_measure) out.reference = i;
  }
  const LifetimeSummary& ref = out.rows[out.reference];
  for (LifetimeSummary& row : out.rows) {
    row.predicted_ratio = row.cell_measure / ref.cell_measure;
    row.measured_ratio = row.mean / ref.mean;
    std::vector<double> paired;
    for (std::size_t k = 0; k < seeds.size(); ++k) paired.push_back(row.lifetimes[k] / ref.lifetimes[k]);
    const detail::MeanCi ci = detail::mean_ci(paired);
    row.ratio_ci_low = ci.low;
    row.ratio_ci_high = ci.high;
    row.relative_deviation = row.measured_ratio / row.predicted_ratio - 1.0;
  }
  return out;
}

}  // namespace gafcell
