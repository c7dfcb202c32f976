#include "boomerang/simnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "boomerang/errors.hpp"

namespace boomerang::simnet {

Topology::Topology(std::size_t nodes) : adjacency_(nodes) {}

ChannelId Topology::add_channel(NodeId a, NodeId b, Funds balance_ab, Funds balance_ba) {
  if (a == b || a >= node_count() || b >= node_count()) throw UsageError("invalid channel endpoints");
  if (connected(a, b)) throw UsageError("duplicate channel");
  if (balance_ab < Funds{} || balance_ba < Funds{}) throw UsageError("negative channel balance");
  const auto id = static_cast<ChannelId>(channels_.size());
  Channel c;
  c.a = a;
  c.b = b;
  c.balance[0] = balance_ab;
  c.balance[1] = balance_ba;
  channels_.push_back(c);
  auto insert = [&](NodeId from, NodeId to) {
    auto& adj = adjacency_[from];
    adj.insert(std::ranges::upper_bound(adj, std::pair{to, id}), {to, id});
  };
  insert(a, b);
  insert(b, a);
  return id;
}

bool Topology::connected(NodeId a, NodeId b) const {
  const auto& adj = adjacency_.at(a);
  auto it = std::ranges::lower_bound(adj, b, {}, &std::pair<NodeId, ChannelId>::first);
  return it != adj.end() && it->first == b;
}

Funds Topology::total_funds() const {
  Funds sum;
  for (const auto& c : channels_) sum += c.balance[0] + c.balance[1] + c.locked[0] + c.locked[1];
  return sum;
}

Funds Topology::total_locked() const {
  Funds sum;
  for (const auto& c : channels_) sum += c.locked[0] + c.locked[1];
  return sum;
}

Topology gen_topology(const TopologyParams& p, Rng& rng) {
  const auto n = p.nodes;
  const auto k = p.ring_neighbors;
  if (k == 0 || k % 2 != 0) throw UsageError("ring_neighbors must be even and positive");
  if (k >= n) throw UsageError("ring_neighbors must be smaller than the node count");
  if (!(p.rewire_prob >= 0.0 && p.rewire_prob <= 1.0)) throw UsageError("rewire_prob must lie in [0, 1]");
  if (!(p.balance_min > 0.0 && p.balance_min <= p.balance_max))
    throw UsageError("balance range must be positive and ordered");

  std::vector<std::set<NodeId>> adj(n);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t j = 1; j <= k / 2; ++j)
    for (std::size_t u = 0; u < n; ++u) {
      const auto v = static_cast<NodeId>((u + j) % n);
      edges.emplace_back(static_cast<NodeId>(u), v);
      adj[u].insert(v);
      adj[v].insert(static_cast<NodeId>(u));
    }

  boost::random::bernoulli_distribution<double> coin(p.rewire_prob);
  std::vector<NodeId> candidates;
  for (auto& [u, v] : edges) {
    if (!coin(rng)) continue;
    candidates.clear();
    for (NodeId w = 0; w < n; ++w)
      if (w != u && !adj[u].contains(w)) candidates.push_back(w);
    if (candidates.empty()) continue;
    boost::random::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const NodeId w = candidates[pick(rng)];
    adj[u].erase(v);
    adj[v].erase(u);
    adj[u].insert(w);
    adj[w].insert(u);
    v = w;
  }

  Topology topo(n);
  boost::random::uniform_real_distribution<double> log_balance(std::log(p.balance_min), std::log(p.balance_max));
  for (const auto& [u, v] : edges) {
    const auto ab = Funds::from_double(std::exp(log_balance(rng)));
    const auto ba = Funds::from_double(std::exp(log_balance(rng)));
    topo.add_channel(u, v, ab, ba);
  }
  return topo;
}

std::vector<Path> precompute_paths(const Topology& topo, NodeId s, NodeId d, std::size_t max_paths) {
  if (s == d) throw UsageError("path endpoints must differ");
  if (s >= topo.node_count() || d >= topo.node_count()) throw UsageError("unknown node");
  const auto n = topo.node_count();
  std::vector<bool> removed(topo.channel_count(), false);
  std::vector<Path> out;
  std::vector<std::int64_t> parent_channel(n);
  std::vector<NodeId> parent(n);
  while (out.size() < max_paths) {
    std::ranges::fill(parent_channel, -1);
    std::vector<bool> seen(n, false);
    std::deque<NodeId> queue{s};
    seen[s] = true;
    while (!queue.empty() && !seen[d]) {
      const NodeId x = queue.front();
      queue.pop_front();
      for (const auto& [y, c] : topo.neighbors(x)) {
        if (removed[c] || seen[y]) continue;
        seen[y] = true;
        parent[y] = x;
        parent_channel[y] = c;
        queue.push_back(y);
      }
    }
    if (!seen[d]) break;
    Path path;
    for (NodeId x = d; x != s; x = parent[x]) {
      const auto c = static_cast<ChannelId>(parent_channel[x]);
      path.nodes.push_back(x);
      path.hops.push_back({c, topo.channel(c).a == parent[x] ? 0 : 1});
      removed[c] = true;
    }
    path.nodes.push_back(s);
    std::ranges::reverse(path.nodes);
    std::ranges::reverse(path.hops);
    out.push_back(std::move(path));
  }
  return out;
}

nlohmann::json to_json(const Topology& topo) {
  nlohmann::json channels = nlohmann::json::array();
  for (const auto& c : topo.channels())
    channels.push_back({{"a", c.a},
                        {"b", c.b},
                        {"balance_ab", c.balance[0].to_string()},
                        {"balance_ba", c.balance[1].to_string()}});
  return {{"nodes", topo.node_count()}, {"channels", channels}};
}

Topology topology_from_json(const nlohmann::json& j) {
  try {
    Topology topo(j.at("nodes").get<std::size_t>());
    const auto& channels = j.at("channels");
    for (std::size_t i = 0; i < channels.size(); ++i) {
      const auto& c = channels[i];
      try {
        topo.add_channel(c.at("a").get<NodeId>(), c.at("b").get<NodeId>(),
                         Funds::parse(c.at("balance_ab").get<std::string>()),
                         Funds::parse(c.at("balance_ba").get<std::string>()));
      } catch (const UsageError& e) {
        throw ParseError("channels[" + std::to_string(i) + "]: " + e.what());
      }
    }
    return topo;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("topology: ") + e.what());
  }
}

}  // namespace boomerang::simnet
