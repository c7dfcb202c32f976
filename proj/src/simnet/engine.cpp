#include "boomerang/simnet/engine.hpp"

#include <boost/random/uniform_int_distribution.hpp>

#include "boomerang/errors.hpp"

namespace boomerang::simnet {

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Reserving: return "reserving";
    case Phase::Reserved: return "reserved";
    case Phase::Failed: return "failed";
    case Phase::RolledBack: return "rolled_back";
    case Phase::Executed: return "executed";
    case Phase::Aborted: return "aborted";
  }
  return "?";
}

Engine::Engine(Topology topo, Duration delay_min, Duration delay_max, Rng& rng)
    : topo_(std::move(topo)), delay_min_(delay_min), delay_max_(delay_max), rng_(rng) {
  if (delay_min < Duration::zero() || delay_max < delay_min) throw UsageError("invalid hop delay range");
}

Duration Engine::draw_delay() {
  if (delay_min_ == delay_max_) return delay_min_;
  boost::random::uniform_int_distribution<Duration::rep> d(delay_min_.count(), delay_max_.count());
  return Duration(d(rng_));
}

void Engine::push(Duration delay, Kind kind, AttemptId a, std::size_t hop) {
  queue_.push({now_ + delay, seq_++, kind, a, hop});
}

void Engine::schedule(Duration delay, std::function<void()> fn) {
  callbacks_.push_back(std::move(fn));
  push(delay, Kind::Callback, callbacks_.size() - 1, 0);
}

AttemptId Engine::reserve(const Path& path, Funds amount, ResponseFn on_response, std::uint64_t tag) {
  if (path.hops.empty()) throw UsageError("cannot reserve on an empty path");
  const AttemptId id = attempts_.size();
  attempts_.push_back({path.hops, amount, Phase::Reserving, 0, 0, false, tag});
  handlers_.push_back({std::move(on_response), {}});
  push(draw_delay(), Kind::ReserveHop, id, 0);
  emit("reserve_start", id, 0);
  return id;
}

void Engine::execute(AttemptId a, DoneFn on_done) {
  auto& t = attempts_.at(a);
  if (t.phase != Phase::Reserved || t.releasing) throw UsageError("only a reserved attempt can be executed");
  t.releasing = true;
  handlers_[a].on_done = std::move(on_done);
  push(draw_delay(), Kind::ExecuteHop, a, t.released);
}

void Engine::rollback(AttemptId a, DoneFn on_done) {
  auto& t = attempts_.at(a);
  if (t.phase == Phase::Reserving || t.phase == Phase::Executed || t.phase == Phase::RolledBack || t.releasing)
    throw UsageError("attempt cannot be rolled back in phase " + std::string(to_string(t.phase)));
  handlers_[a].on_done = std::move(on_done);
  if (t.released == t.locked) {
    if (t.phase != Phase::Aborted) t.phase = Phase::RolledBack;
    emit("rollback_done", a, t.locked);
    if (auto fn = std::move(handlers_[a].on_done)) fn(a);
    retire(a);
    return;
  }
  t.releasing = true;
  push(draw_delay(), Kind::RollbackHop, a, t.released);
}

void Engine::abort(AttemptId a) {
  auto& t = attempts_.at(a);
  if (t.phase != Phase::Reserving) throw UsageError("only a reserving attempt can be aborted");
  t.phase = Phase::Aborted;
  emit("abort", a, t.locked);
  rollback(a);
}

void Engine::release_next(AttemptId a, bool execute) {
  auto& t = attempts_[a];
  const Hop hop = t.hops[t.released];
  auto& c = topo_.channel(hop.channel);
  c.locked[hop.dir] -= t.amount;
  c.balance[execute ? 1 - hop.dir : hop.dir] += t.amount;
  held_ -= t.amount;
  ++t.released;
  emit(execute ? "execute_hop" : "rollback_hop", a, t.released - 1);
  if (t.released < t.locked) {
    push(draw_delay(), execute ? Kind::ExecuteHop : Kind::RollbackHop, a, t.released);
    return;
  }
  t.releasing = false;
  if (execute)
    t.phase = Phase::Executed;
  else if (t.phase != Phase::Aborted)
    t.phase = Phase::RolledBack;
  emit(execute ? "execute_done" : "rollback_done", a, t.released);
  if (auto fn = std::move(handlers_[a].on_done)) fn(a);
  retire(a);
}

void Engine::retire(AttemptId a) {
  // Long runs create millions of attempts; keep only their summary.
  std::vector<Hop>().swap(attempts_[a].hops);
  handlers_[a] = {};
}

void Engine::notify(AttemptId a, Phase p) {
  // Copied: the handler may reserve again and grow handlers_.
  auto fn = handlers_[a].on_response;
  if (fn) fn(a, p);
}

bool Engine::step() {
  if (queue_.empty()) return false;
  const Event e = queue_.top();
  queue_.pop();
  now_ = e.at;
  ++events_;
  switch (e.kind) {
    case Kind::Callback: {
      auto fn = std::move(callbacks_[e.attempt]);
      fn();
      break;
    }
    case Kind::ReserveHop: {
      auto& t = attempts_[e.attempt];
      if (t.phase != Phase::Reserving) break;  // aborted while this hop was pending
      const Hop hop = t.hops[e.hop];
      auto& c = topo_.channel(hop.channel);
      if (c.balance[hop.dir] >= t.amount) {
        c.balance[hop.dir] -= t.amount;
        c.locked[hop.dir] += t.amount;
        held_ += t.amount;
        ++t.locked;
        emit("reserve_hop", e.attempt, e.hop);
        if (t.locked < t.hops.size()) {
          push(draw_delay(), Kind::ReserveHop, e.attempt, t.locked);
        } else {
          t.phase = Phase::Reserved;
          emit("reserved", e.attempt, e.hop);
          notify(e.attempt, Phase::Reserved);
        }
      } else {
        t.phase = Phase::Failed;
        emit("failed", e.attempt, e.hop);
        notify(e.attempt, Phase::Failed);
      }
      break;
    }
    case Kind::ExecuteHop: release_next(e.attempt, true); break;
    case Kind::RollbackHop: release_next(e.attempt, false); break;
  }
  if (checking_) check();
  return true;
}

void Engine::run() {
  while (step()) {
  }
}

void Engine::enable_invariant_checks() {
  checking_ = true;
  initial_total_ = topo_.total_funds();
}

void Engine::check() {
  ++report_.events_checked;
  Funds total;
  Funds locked;
  bool negative = false;
  for (const auto& c : topo_.channels()) {
    for (int d = 0; d < 2; ++d) {
      if (c.balance[d] < Funds{} || c.locked[d] < Funds{}) negative = true;
      total += c.balance[d] + c.locked[d];
      locked += c.locked[d];
    }
  }
  if (total != initial_total_) ++report_.conservation_violations;
  if (negative) ++report_.negative_balances;
  if (locked != held_) ++report_.lock_mismatches;
}

void Engine::finish_invariants() { report_.residual_locks = topo_.total_locked(); }

void Engine::emit(const char* what, AttemptId a, std::size_t hop) {
  if (!trace_) return;
  const auto& t = attempts_[a];
  nlohmann::json j{{"t_us", now_.time_since_epoch().count()},
                   {"event", what},
                   {"tf", t.tag},
                   {"attempt", a},
                   {"hop", hop},
                   {"amount_micros", t.amount.micros()}};
  if (hop < t.hops.size()) {
    j["channel"] = t.hops[hop].channel;
    j["dir"] = t.hops[hop].dir;
  }
  trace_(j);
}

}  // namespace boomerang::simnet
