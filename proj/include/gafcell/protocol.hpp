#pragma once

// GAF node state machine: discovery broadcasts, rank-based election and the
// T_d / T_a / T_s timers.  Pure functions over NodeRuntime values.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gafcell/error.hpp"
#include "gafcell/partition.hpp"
#include "gafcell/vec.hpp"

namespace gafcell {

enum class NodeState { Sleeping = 0, Discovery = 1, Active = 2 };

inline constexpr std::string_view to_string(NodeState s) {
  switch (s) {
    case NodeState::Sleeping: return "sleeping";
    case NodeState::Discovery: return "discovery";
    case NodeState::Active: return "active";
  }
  return "?";
}

inline std::optional<NodeState> parse_node_state(std::string_view s) {
  if (s == "sleeping") return NodeState::Sleeping;
  if (s == "discovery") return NodeState::Discovery;
  if (s == "active") return NodeState::Active;
  return std::nullopt;
}

struct ProtocolParams {
  double t_discovery = 1.0;
  double t_active = 60.0;
  double t_sleep = 30.0;
  double draw_sleeping = 0.01;
  double draw_discovery = 1.0;
  double draw_active = 1.0;
  double battery = 1000.0;

  double draw(NodeState s) const {
    switch (s) {
      case NodeState::Sleeping: return draw_sleeping;
      case NodeState::Discovery: return draw_discovery;
      case NodeState::Active: return draw_active;
    }
    return 0.0;
  }

  double timeout(NodeState s) const {
    switch (s) {
      case NodeState::Sleeping: return t_sleep;
      case NodeState::Discovery: return t_discovery;
      case NodeState::Active: return t_active;
    }
    return 0.0;
  }

  void validate() const {
    for (double t : {t_discovery, t_active, t_sleep}) {
      if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("protocol durations must be positive");
    }
    if (!(draw_sleeping >= 0.0) || !(draw_discovery >= 0.0)) throw InvalidArgument("power draws must be >= 0");
    if (draw_sleeping > draw_discovery) throw InvalidArgument("sleeping draw must not exceed discovery draw");
    if (!(draw_active > 0.0)) throw InvalidArgument("active draw must be positive");
    if (!(battery > 0.0) || !std::isfinite(battery)) throw InvalidArgument("initial battery must be positive");
  }

  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

struct DiscoveryMessage {
  int node_id = 0;
  CellIndex cell{};
  double estimated_active_time = 0.0;
  NodeState state = NodeState::Discovery;
  // False when the sender sits outside its cell's current active subcell.
  bool eligible = true;

  friend bool operator==(const DiscoveryMessage&, const DiscoveryMessage&) = default;
};

struct NodeRuntime {
  int id = 0;
  Vec3 position{};
  CellIndex cell{};
  double battery = 0.0;
  NodeState state = NodeState::Discovery;
  double timer = 0.0;  // time spent in the current state
  bool eligible = true;
  double clock = 0.0;
  double since_broadcast = std::numeric_limits<double>::infinity();
  std::array<double, 3> time_in_state{0.0, 0.0, 0.0};  // indexed by NodeState
  std::optional<double> death_time;

  bool alive() const { return !death_time.has_value(); }

  friend bool operator==(const NodeRuntime&, const NodeRuntime&) = default;
};

inline NodeRuntime make_node(int id, const Vec3& position, const CellIndex& cell, const ProtocolParams& params) {
  NodeRuntime n;
  n.id = id;
  n.position = position;
  n.cell = cell;
  n.battery = params.battery;
  return n;
}

// Higher compares greater.  Order: eligibility, Active over Discovery,
// estimated active time, then the smaller id.
struct Rank {
  bool eligible = true;
  int state_preference = 0;
  double estimated_active_time = 0.0;
  int id = 0;

  friend bool operator==(const Rank&, const Rank&) = default;
  friend std::partial_ordering operator<=>(const Rank& a, const Rank& b) {
    if (auto c = a.eligible <=> b.eligible; c != 0) return c;
    if (auto c = a.state_preference <=> b.state_preference; c != 0) return c;
    if (auto c = a.estimated_active_time <=> b.estimated_active_time; c != 0) return c;
    return b.id <=> a.id;
  }
};

inline Rank rank_of(const DiscoveryMessage& m) {
  return {m.eligible, m.state == NodeState::Active ? 1 : 0, m.estimated_active_time, m.node_id};
}

inline Rank rank(const NodeRuntime& node, const ProtocolParams& params) {
  if (!node.alive()) throw InvalidArgument("dead node " + std::to_string(node.id) + " has no rank");
  return {node.eligible, node.state == NodeState::Active ? 1 : 0, node.battery / params.draw_active, node.id};
}

inline DiscoveryMessage announce(const NodeRuntime& node, const ProtocolParams& params) {
  return {node.id, node.cell, node.battery / params.draw_active, node.state, node.eligible};
}

inline int elect(std::span<const DiscoveryMessage> messages, const ProtocolParams&) {
  if (messages.empty()) throw InvalidArgument("election over an empty message set");
  const DiscoveryMessage* best = &messages.front();
  for (const DiscoveryMessage& m : messages) {
    if (m.cell != messages.front().cell) throw InvalidArgument("election messages from different cells");
    if (rank_of(m) > rank_of(*best)) best = &m;
  }
  return best->node_id;
}

struct StepResult {
  NodeRuntime node;
  std::vector<DiscoveryMessage> outbox;
};

namespace detail {

inline void enter(NodeRuntime& n, NodeState s) {
  n.state = s;
  n.timer = 0.0;
  n.since_broadcast = std::numeric_limits<double>::infinity();
}

inline bool expired(double elapsed, double limit) { return elapsed >= limit * (1.0 - 1e-9); }

}  // namespace detail

// Forces a live node back into discovery (used at rotation / sliding epochs).
inline void restart_discovery(NodeRuntime& node) {
  if (node.alive()) detail::enter(node, NodeState::Discovery);
}

// Advances one node over `elapsed`.  The inbox holds same-cell messages sent
// at the start of the interval; replies are sent at its end.
inline StepResult step(NodeRuntime node, double elapsed, std::span<const DiscoveryMessage> inbox,
                       const ProtocolParams& params) {
  if (!node.alive()) throw InvalidArgument("dead node " + std::to_string(node.id) + " cannot step");
  if (!(elapsed >= 0.0)) throw InvalidArgument("elapsed time must be non-negative");
  StepResult out;
  const NodeState before = node.state;

  // sleeping radios are off
  if (node.state != NodeState::Sleeping) {
    const Rank own = rank(node, params);
    for (const DiscoveryMessage& m : inbox) {
      if (m.node_id == node.id || m.cell != node.cell) continue;
      const Rank other = rank_of(m);
      if (!(other > own)) continue;
      if (node.state == NodeState::Discovery || m.state == NodeState::Active) {
        detail::enter(node, NodeState::Sleeping);
        break;
      }
    }
  }

  const double draw = params.draw(node.state);
  const int si = static_cast<int>(node.state);
  if (draw > 0.0 && draw * elapsed >= node.battery) {
    const double t = node.battery / draw;
    node.time_in_state[si] += t;
    node.timer += t;
    node.battery = 0.0;
    node.death_time = node.clock + t;
    node.clock += elapsed;
    out.node = node;
    return out;
  }
  node.battery -= draw * elapsed;
  node.time_in_state[si] += elapsed;
  node.clock += elapsed;
  node.timer += elapsed;
  node.since_broadcast += elapsed;

  if (detail::expired(node.timer, params.timeout(node.state))) {
    switch (node.state) {
      case NodeState::Discovery: detail::enter(node, NodeState::Active); break;
      case NodeState::Active: detail::enter(node, NodeState::Discovery); break;
      case NodeState::Sleeping: detail::enter(node, NodeState::Discovery); break;
    }
  }

  if (node.state != NodeState::Sleeping &&
      (node.state != before || detail::expired(node.since_broadcast, params.t_discovery))) {
    out.outbox.push_back(announce(node, params));
    node.since_broadcast = 0.0;
  }
  out.node = node;
  return out;
}

}  // namespace gafcell
