#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include <json.hpp>

#include "boomerang/simnet/topology.hpp"

namespace boomerang::simnet {

using AttemptId = std::uint64_t;

enum class Phase { Reserving, Reserved, Failed, RolledBack, Executed, Aborted };
std::string_view to_string(Phase p);

/// One TX attempt along a path. Hops [released, locked) currently hold a lock.
/// `hops` is cleared once the attempt is finished.
struct TxAttempt {
  std::vector<Hop> hops;
  Funds amount;
  Phase phase = Phase::Reserving;
  std::size_t locked = 0;
  std::size_t released = 0;
  bool releasing = false;  // an execute or rollback traversal is under way
  std::uint64_t tag = 0;   // owning transfer, for traces
};

struct InvariantReport {
  std::uint64_t events_checked = 0;
  std::uint64_t conservation_violations = 0;
  std::uint64_t negative_balances = 0;
  std::uint64_t lock_mismatches = 0;  // channel locks disagree with attempt-held locks
  Funds residual_locks;               // at the end of the run
  std::uint64_t atomicity_violations = 0;
  std::uint64_t overdraws = 0;

  bool ok() const {
    return conservation_violations == 0 && negative_balances == 0 && lock_mismatches == 0 &&
           residual_locks == Funds{} && atomicity_violations == 0 && overdraws == 0;
  }
};

using TraceSink = std::function<void(const nlohmann::json&)>;

/// Discrete-event channel layer: one global queue ordered by (time, insertion
/// sequence). Every channel operation on a hop takes a delay drawn uniformly
/// from [delay_min, delay_max]; notifications to the source and aborts are
/// instantaneous.
class Engine {
 public:
  using ResponseFn = std::function<void(AttemptId, Phase)>;
  using DoneFn = std::function<void(AttemptId)>;

  Engine(Topology topo, Duration delay_min, Duration delay_max, Rng& rng);

  /// Locks amount hop by hop from the source; `on_response` fires with
  /// Reserved or Failed. A failed attempt keeps its upstream locks until
  /// rolled back.
  AttemptId reserve(const Path& path, Funds amount, ResponseFn on_response, std::uint64_t tag = 0);
  /// Moves every held lock to the receiving side, source first.
  void execute(AttemptId a, DoneFn on_done = {});
  /// Releases every held lock, source first.
  void rollback(AttemptId a, DoneFn on_done = {});
  /// Stops a Reserving attempt and rolls back what it has locked so far.
  void abort(AttemptId a);

  /// Runs `fn` at now() + delay, ordered with the other events.
  void schedule(Duration delay, std::function<void()> fn);

  bool step();
  void run();

  Timestamp now() const noexcept { return now_; }
  const Topology& topology() const noexcept { return topo_; }
  const TxAttempt& attempt(AttemptId a) const { return attempts_.at(a); }
  std::uint64_t events_processed() const noexcept { return events_; }

  void set_trace(TraceSink sink) { trace_ = std::move(sink); }
  void enable_invariant_checks();
  InvariantReport& invariants() noexcept { return report_; }
  /// Records residual locks; call once the queue is drained.
  void finish_invariants();
  Duration draw_delay();
  Rng& rng() noexcept { return rng_; }

 private:
  enum class Kind { ReserveHop, ExecuteHop, RollbackHop, Callback };
  struct Event {
    Timestamp at;
    std::uint64_t seq;
    Kind kind;
    AttemptId attempt;
    std::size_t hop;
  };
  struct Later {
    bool operator()(const Event& x, const Event& y) const {
      return x.at != y.at ? x.at > y.at : x.seq > y.seq;
    }
  };
  struct Handlers {
    ResponseFn on_response;
    DoneFn on_done;
  };

  void push(Duration delay, Kind kind, AttemptId a, std::size_t hop);
  void release_next(AttemptId a, bool execute);
  void notify(AttemptId a, Phase p);
  void retire(AttemptId a);
  void emit(const char* what, AttemptId a, std::size_t hop);
  void check();

  Topology topo_;
  Duration delay_min_;
  Duration delay_max_;
  Rng& rng_;
  Timestamp now_{};
  std::uint64_t seq_ = 0;
  std::uint64_t events_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::vector<TxAttempt> attempts_;
  std::vector<Handlers> handlers_;
  std::vector<std::function<void()>> callbacks_;
  TraceSink trace_;
  bool checking_ = false;
  Funds initial_total_;
  Funds held_;
  InvariantReport report_;
};

}  // namespace boomerang::simnet
