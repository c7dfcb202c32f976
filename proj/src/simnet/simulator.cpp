#include "boomerang/simnet/simulator.hpp"

#include <algorithm>
#include <deque>
#include <memory>

#include <boost/random/uniform_int_distribution.hpp>

#include "boomerang/errors.hpp"

namespace boomerang::simnet {

const std::vector<Path>& PathCache::paths(NodeId s, NodeId d) {
  auto it = cache_.find({s, d});
  if (it == cache_.end()) it = cache_.emplace(std::pair{s, d}, precompute_paths(topo_, s, d, max_paths_)).first;
  return it->second;
}

bool finalize_amp(Engine& engine, std::vector<AttemptId>& outstanding, const std::vector<AttemptId>& successful,
                  std::size_t v, const Engine::DoneFn& on_executed) {
  for (auto a : outstanding) engine.abort(a);
  outstanding.clear();
  const bool execute = successful.size() == v;
  for (auto a : successful) {
    if (execute)
      engine.execute(a, on_executed);
    else
      engine.rollback(a);
  }
  return execute;
}

namespace {

class Routing : public std::enable_shared_from_this<Routing> {
 public:
  Routing(Engine& engine, const Transfer& t, const std::vector<Path>& paths, std::size_t v, std::size_t u,
          const Scheme& scheme, CompletionFn done, std::uint64_t tag)
      : engine_(engine), paths_(paths), v_(v), upfront_(scheme.upfront(v, u)), retries_left_(scheme.retries(u)),
        per_tx_(t.amount.split(static_cast<std::int64_t>(v))), done_(std::move(done)), tag_(tag) {
    outcome_.amount = t.amount;
    outcome_.start = engine.now();
  }

  void start() {
    if (paths_.empty()) {
      complete();
      return;
    }
    for (std::size_t i = 0; i < upfront_; ++i) send_reserve();
  }

 private:
  void send_reserve() {
    boost::random::uniform_int_distribution<std::size_t> pick(0, paths_.size() - 1);
    const auto& path = paths_[pick(engine_.rng())];
    ++outcome_.attempts;
    outstanding_.push_back(engine_.reserve(
        path, per_tx_, [self = shared_from_this()](AttemptId a, Phase p) { self->on_response(a, p); }, tag_));
  }

  bool contingent() const {
    return successful_.size() < v_ && !outstanding_.empty() &&
           successful_.size() + outstanding_.size() + retries_left_ >= v_;
  }

  void on_response(AttemptId a, Phase p) {
    std::erase(outstanding_, a);
    if (p == Phase::Reserved) {
      successful_.push_back(a);
    } else {
      engine_.rollback(a);
      if (retries_left_ > 0) {
        send_reserve();
        --retries_left_;
      }
    }
    if (!contingent()) finalize();
  }

  void finalize() {
    const bool executing = finalize_amp(engine_, outstanding_, successful_, v_,
                                        [self = shared_from_this()](AttemptId) { self->on_executed(); });
    if (!executing) complete();
  }

  void on_executed() {
    if (++outcome_.executed == v_) {
      outcome_.success = true;
      complete();
    }
  }

  void complete() {
    outcome_.end = engine_.now();
    done_(outcome_);
  }

  Engine& engine_;
  const std::vector<Path>& paths_;
  std::size_t v_;
  std::size_t upfront_;
  std::size_t retries_left_;
  Funds per_tx_;
  CompletionFn done_;
  std::uint64_t tag_;
  std::vector<AttemptId> outstanding_;
  std::vector<AttemptId> successful_;
  TransferOutcome outcome_;
};

}  // namespace

void route_transfer(Engine& engine, const Scheme& scheme, const Transfer& t, const std::vector<Path>& paths,
                    std::size_t v, std::size_t u, CompletionFn on_complete, std::uint64_t tag) {
  if (v == 0) throw UsageError("v must be positive");
  if (t.amount <= Funds{}) throw UsageError("transfer amount must be positive");
  if (t.source == t.destination) throw UsageError("transfer source equals destination");
  std::make_shared<Routing>(engine, t, paths, v, u, scheme, std::move(on_complete), tag)->start();
}

SeedStreams seed_streams(std::uint64_t seed) {
  auto stream = [seed](std::uint32_t which) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), which};
    return Rng(seq);
  };
  return {stream(1), stream(2), stream(3)};
}

RunResult run_experiment(const SimConfig& cfg, Topology topo, const std::vector<Transfer>& transfers, Rng& rng,
                         const RunOptions& options) {
  cfg.validate();
  for (const auto& t : transfers)
    if (t.source >= topo.node_count() || t.destination >= topo.node_count())
      throw UsageError("transfer endpoint outside the topology");
  const auto node_count = topo.node_count();
  Engine engine(std::move(topo), cfg.hop_delay_min, cfg.hop_delay_max, rng);
  if (options.trace) engine.set_trace(options.trace);
  if (options.check_invariants) engine.enable_invariant_checks();
  PathCache paths(engine.topology(), cfg.max_paths);

  RunResult result;
  result.outcomes.resize(transfers.size());
  std::vector<std::deque<std::size_t>> backlog(node_count);
  for (std::size_t i = 0; i < transfers.size(); ++i) backlog[transfers[i].source].push_back(i);

  std::function<void(NodeId)> start_next = [&](NodeId node) {
    if (backlog[node].empty()) return;
    const auto i = backlog[node].front();
    backlog[node].pop_front();
    const auto& t = transfers[i];
    if (options.trace)
      options.trace({{"t_us", engine.now().time_since_epoch().count()}, {"event", "tf_start"}, {"tf", i}});
    route_transfer(engine, cfg.scheme, t, paths.paths(t.source, t.destination), cfg.v, cfg.u,
                   [&, i, node](const TransferOutcome& o) {
                     result.outcomes[i] = o;
                     auto& inv = engine.invariants();
                     if (o.executed > cfg.v) ++inv.overdraws;
                     if (o.executed != 0 && o.executed != cfg.v) ++inv.atomicity_violations;
                     if (options.trace)
                       options.trace({{"t_us", engine.now().time_since_epoch().count()},
                                      {"event", "tf_end"},
                                      {"tf", i},
                                      {"success", o.success},
                                      {"executed", o.executed}});
                     // Deferred so long runs of instant failures do not nest.
                     engine.schedule(Duration::zero(), [&start_next, node] { start_next(node); });
                   },
                   i);
  };
  for (NodeId n = 0; n < node_count; ++n) start_next(n);
  engine.run();
  engine.finish_invariants();

  double ttc_sum = 0.0;
  double volume_sum = 0.0;
  for (const auto& o : result.outcomes) {
    result.makespan = std::max(result.makespan, o.end);
    if (!o.success) continue;
    ++result.successes;
    result.success_funds += o.amount.split(static_cast<std::int64_t>(cfg.v)) * static_cast<std::int64_t>(cfg.v);
    ttc_sum += to_seconds(o.ttc());
    volume_sum += o.amount.to_double();
  }
  const double runtime = to_seconds(result.makespan);
  if (runtime > 0.0 && node_count > 0)
    result.throughput_success = result.success_funds.to_double() / (runtime * static_cast<double>(node_count));
  if (result.successes > 0) {
    result.ttc_success_mean = ttc_sum / static_cast<double>(result.successes);
    result.volume_success_mean = volume_sum / static_cast<double>(result.successes);
  }
  result.events = engine.events_processed();
  result.invariants = engine.invariants();
  return result;
}

RunResult run_seeded(const SimConfig& cfg, const RunOptions& options, const std::vector<Funds>& amount_trace) {
  cfg.validate();
  auto streams = seed_streams(cfg.seed);
  auto topo = gen_topology(cfg.topology, streams.topology);
  auto transfers = amount_trace.empty()
                       ? generate_transfers(cfg.topology.nodes, cfg.num_transfers, cfg.amounts, streams.transfers)
                       : resample_transfers(cfg.topology.nodes, cfg.num_transfers, amount_trace, streams.transfers);
  return run_experiment(cfg, std::move(topo), transfers, streams.simulation, options);
}

}  // namespace boomerang::simnet
