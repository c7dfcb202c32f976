#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <json.hpp>

#include "boomerang/units.hpp"

namespace boomerang::simnet {

using NodeId = std::uint32_t;
using ChannelId = std::uint32_t;
using Rng = std::mt19937_64;

/// Undirected payment channel. Direction 0 is a->b, direction 1 is b->a;
/// balance[d] is what the sending endpoint of direction d can still push.
struct Channel {
  NodeId a = 0;
  NodeId b = 0;
  Funds balance[2];
  Funds locked[2];

  NodeId sender(int dir) const { return dir == 0 ? a : b; }
  NodeId receiver(int dir) const { return dir == 0 ? b : a; }
};

class Topology {
 public:
  Topology() = default;
  explicit Topology(std::size_t nodes);

  ChannelId add_channel(NodeId a, NodeId b, Funds balance_ab, Funds balance_ba);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t channel_count() const noexcept { return channels_.size(); }
  const std::vector<Channel>& channels() const noexcept { return channels_; }
  std::vector<Channel>& channels() noexcept { return channels_; }
  const Channel& channel(ChannelId c) const { return channels_.at(c); }
  Channel& channel(ChannelId c) { return channels_.at(c); }

  /// (neighbor, channel) pairs sorted by neighbor id.
  const std::vector<std::pair<NodeId, ChannelId>>& neighbors(NodeId n) const { return adjacency_.at(n); }
  std::size_t degree(NodeId n) const { return adjacency_.at(n).size(); }
  bool connected(NodeId a, NodeId b) const;

  /// Sum over all directed balances and locks.
  Funds total_funds() const;
  Funds total_locked() const;

 private:
  std::vector<Channel> channels_;
  std::vector<std::vector<std::pair<NodeId, ChannelId>>> adjacency_;
};

struct TopologyParams {
  std::size_t nodes = 100;
  std::size_t ring_neighbors = 8;
  double rewire_prob = 0.8;
  double balance_min = 100.0;
  double balance_max = 1000.0;
};

/// Watts-Strogatz ring lattice with k nearest neighbours, each lattice edge
/// rewired with the given probability; directed balances log-uniform in
/// [balance_min, balance_max]. Throws UsageError on k odd, k == 0 or k >= N.
Topology gen_topology(const TopologyParams& params, Rng& rng);

/// One hop of a path: the channel and the direction funds travel in.
struct Hop {
  ChannelId channel;
  int dir;
};

struct Path {
  std::vector<NodeId> nodes;
  std::vector<Hop> hops;
  std::size_t length() const noexcept { return hops.size(); }
};

/// Repeated BFS shortest paths from s to d, removing each found path's
/// channels before the next search. Returns at most max_paths pairwise
/// edge-disjoint paths in non-decreasing length. Throws UsageError if s == d.
std::vector<Path> precompute_paths(const Topology& topo, NodeId s, NodeId d, std::size_t max_paths);

nlohmann::json to_json(const Topology& topo);
/// Throws ParseError on malformed input.
Topology topology_from_json(const nlohmann::json& j);

}  // namespace boomerang::simnet
