#pragma once

#include <functional>
#include <map>
#include <vector>

#include "boomerang/simnet/config.hpp"
#include "boomerang/simnet/engine.hpp"
#include "boomerang/simnet/transfers.hpp"

namespace boomerang::simnet {

struct TransferOutcome {
  bool success = false;
  std::size_t executed = 0;  // TXs executed, 0 or v
  std::size_t attempts = 0;  // TX attempts sent, retries included
  Timestamp start{};
  Timestamp end{};
  Funds amount;

  Duration ttc() const { return end - start; }
  friend bool operator==(const TransferOutcome&, const TransferOutcome&) = default;
};

/// Edge-disjoint path sets on the static topology, computed on first use.
class PathCache {
 public:
  PathCache(const Topology& topo, std::size_t max_paths) : topo_(topo), max_paths_(max_paths) {}
  const std::vector<Path>& paths(NodeId s, NodeId d);

 private:
  const Topology& topo_;
  std::size_t max_paths_;
  std::map<std::pair<NodeId, NodeId>, std::vector<Path>> cache_;
};

using CompletionFn = std::function<void(const TransferOutcome&)>;

/// Aborts everything outstanding; executes `successful` if it holds exactly v
/// attempts, otherwise rolls it back. Returns true when executing, in which
/// case `on_executed` fires once per executed attempt.
bool finalize_amp(Engine& engine, std::vector<AttemptId>& outstanding, const std::vector<AttemptId>& successful,
                  std::size_t v, const Engine::DoneFn& on_executed);

/// Routes one transfer, starting now, as v TXs of amount/v each on paths
/// drawn uniformly with replacement. The scheme fixes how many TXs go out
/// upfront and how many failures may be re-attempted; the transfer stays
/// contingent while |P| < v, |O| > 0 and |P| + |O| + retries_left >= v.
void route_transfer(Engine& engine, const Scheme& scheme, const Transfer& t, const std::vector<Path>& paths,
                    std::size_t v, std::size_t u, CompletionFn on_complete, std::uint64_t tag = 0);

inline void route_retry(Engine& e, const Transfer& t, const std::vector<Path>& paths, std::size_t v, std::size_t u,
                        CompletionFn done, std::uint64_t tag = 0) {
  route_transfer(e, {SchemeKind::Retry}, t, paths, v, u, std::move(done), tag);
}
inline void route_redundancy(Engine& e, const Transfer& t, const std::vector<Path>& paths, std::size_t v,
                             std::size_t u, CompletionFn done, std::uint64_t tag = 0) {
  route_transfer(e, {SchemeKind::Redundancy}, t, paths, v, u, std::move(done), tag);
}
inline void route_redundant_retry(Engine& e, const Transfer& t, const std::vector<Path>& paths, std::size_t v,
                                  std::size_t u, CompletionFn done, std::size_t cap = 10, std::uint64_t tag = 0) {
  route_transfer(e, {SchemeKind::RedundantRetry, cap}, t, paths, v, u, std::move(done), tag);
}

struct RunResult {
  std::vector<TransferOutcome> outcomes;
  std::size_t successes = 0;
  Funds success_funds;
  Timestamp makespan{};
  double throughput_success = 0.0;  // funds per second per node
  double ttc_success_mean = 0.0;    // seconds
  double volume_success_mean = 0.0;
  std::uint64_t events = 0;
  InvariantReport invariants;
};

struct RunOptions {
  bool check_invariants = false;
  TraceSink trace;
};

/// Independent random streams derived from one seed.
struct SeedStreams {
  Rng topology;
  Rng transfers;
  Rng simulation;
};
SeedStreams seed_streams(std::uint64_t seed);

/// Every node routes its own backlog one transfer at a time; all nodes run
/// concurrently on the shared event queue from time zero.
RunResult run_experiment(const SimConfig& cfg, Topology topo, const std::vector<Transfer>& transfers, Rng& rng,
                         const RunOptions& options = {});

/// Topology, transfers and simulation randomness all derived from cfg.seed.
/// A non-empty amount trace replaces the log-normal amount model.
RunResult run_seeded(const SimConfig& cfg, const RunOptions& options = {},
                     const std::vector<Funds>& amount_trace = {});

}  // namespace boomerang::simnet
