#include "boomerang/contract/stages.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "boomerang/errors.hpp"

namespace boomerang::contract {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Promise: return "promise";
    case Stage::Deliver: return "deliver";
    case Stage::Cancel: return "cancel";
    case Stage::Finish: return "finish";
  }
  return "?";
}

StageTrace run_transfer_stages(ChallengePlan& plan, std::span<const ChainSpec> chains, std::size_t v,
                               std::span<const challenge::Preimage> deliveries, const StageOptions& options) {
  if (chains.empty()) throw UsageError("transfer needs at least one chain");
  if (v < 1) throw UsageError("transfer needs v >= 1");
  std::size_t longest = 0;
  std::set<Index> chain_indices;
  for (const auto& c : chains) {
    if (c.hops == 0 || c.reached_hops > c.hops) throw UsageError("invalid chain shape");
    if (!chain_indices.insert(c.index).second) throw UsageError("duplicate chain index");
    longest = std::max(longest, c.hops);
  }
  // Sufficient condition for propagation within the staggered windows.
  if (options.hop_latency * static_cast<std::int64_t>(longest) >= options.step)
    throw UsageError("hop latency times path length must stay below the timeout step");

  const GroupParams& params = plan.commitments().params;
  const GroupElement revert_challenge = plan.commitments().commitments.front();
  const auto lat = options.hop_latency;
  const auto span_time = lat * static_cast<std::int64_t>(longest);

  StageTrace trace;
  auto log = [&](Timestamp at, Stage stage, Index chain, std::size_t hop, std::string transition,
                 std::string reason = {}) {
    trace.events.push_back({at, stage, chain, hop, std::move(transition), std::move(reason)});
  };

  // 1. Promise
  std::map<Index, std::size_t> position;
  for (const auto& spec : chains) {
    const auto challenge = plan.derive_challenge(spec.index);
    const auto timeouts = stagger_timeouts(spec.hops, options.t0, options.step);
    ChainResult result{spec, {}, false};
    for (std::size_t k = 0; k < spec.reached_hops; ++k) {
      result.hops.push_back(BoomerangContract::deploy(params, challenge, revert_challenge, options.amount,
                                                      options.fee, options.t0, timeouts.hops[k].delta_fwd,
                                                      timeouts.hops[k].delta_rev));
      log(options.t0 + lat * static_cast<std::int64_t>(k), Stage::Promise, spec.index, k, "deploy");
    }
    if (!spec.reaches_payee())
      log(options.t0 + lat * static_cast<std::int64_t>(spec.reached_hops), Stage::Promise, spec.index,
          spec.reached_hops, "stall", "liquidity");
    position[spec.index] = trace.chains.size();
    trace.chains.push_back(std::move(result));
  }

  // 2. Deliver, payee side first
  const Timestamp deliver_at = options.t0 + span_time;
  std::set<Index> seen;
  for (const auto& d : deliveries) {
    if (!seen.insert(d.index).second) throw UsageError("duplicate delivery index");
    auto it = position.find(d.index);
    if (it == position.end()) throw UsageError("delivery for unknown chain " + std::to_string(d.index));
    auto& chain = trace.chains[it->second];
    if (!chain.spec.reaches_payee())
      throw UsageError("delivery on chain " + std::to_string(d.index) + " which never reached the payee");
    const auto n = chain.hops.size();
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t k = n - 1 - step;
      const auto at = deliver_at + lat * static_cast<std::int64_t>(step);
      auto res = chain.hops[k].claim_forward(d, at);
      if (!res.accepted()) {
        // Only the payee's own claim can fail; upstream hops reuse a verified preimage.
        log(at, Stage::Deliver, d.index, k, "reject", std::string(to_string(*res.rejection)));
        break;
      }
      log(at, Stage::Deliver, d.index, k, "claim_forward");
      if (k == 0) chain.delivered = true;
    }
    if (chain.delivered) ++trace.delivered;
  }

  // 3. Cancel, payee side first
  const Timestamp cancel_at = deliver_at + span_time;
  for (auto& chain : trace.chains) {
    if (chain.delivered) continue;
    const auto n = chain.hops.size();
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t k = n - 1 - step;
      chain.hops[k].cancel();
      log(cancel_at + lat * static_cast<std::int64_t>(step), Stage::Cancel, chain.spec.index, k, "cancel",
          chain.spec.reaches_payee() ? "surplus" : "unsuccessful");
    }
  }

  // 4. Finish, payer side first
  const Timestamp finish_at = cancel_at + span_time;
  trace.overdraw = trace.delivered > v;
  std::optional<Scalar> alpha0;
  if (trace.overdraw) {
    std::vector<challenge::Preimage> learned;
    for (const auto& chain : trace.chains)
      if (chain.delivered) learned.push_back(*chain.hops.front().revealed_preimage());
    alpha0 = challenge::recover_secret(learned, v);
    const bool proof = challenge::verify_cheat_proof(plan.commitments(), *alpha0);
    log(finish_at, Stage::Finish, 0, 0, "recover_secret", proof ? "cheat_proof_valid" : "cheat_proof_invalid");
    trace.recovered_secret = alpha0;
  }
  for (auto& chain : trace.chains) {
    if (!chain.delivered) continue;
    for (std::size_t k = 0; k < chain.hops.size(); ++k) {
      const auto at = finish_at + lat * static_cast<std::int64_t>(k);
      if (alpha0) {
        auto res = chain.hops[k].claim_reverse(*alpha0, at);
        log(at, Stage::Finish, chain.spec.index, k, res.accepted() ? "claim_reverse" : "reject",
            res.accepted() ? "overdraw" : std::string(to_string(*res.rejection)));
      } else {
        chain.hops[k].renounce();
        log(at, Stage::Finish, chain.spec.index, k, "renounce");
      }
    }
  }
  // Chains proceed concurrently; the log is kept in global time order.
  std::ranges::stable_sort(trace.events, {}, &StageEvent::at);
  return trace;
}

nlohmann::json to_json(const StageTrace& trace) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : trace.events) {
    nlohmann::json j{{"timestamp_us", e.at.time_since_epoch().count()},
                     {"stage", to_string(e.stage)},
                     {"chain", e.chain},
                     {"hop", e.hop},
                     {"transition", e.transition}};
    if (!e.reason.empty()) j["reason"] = e.reason;
    events.push_back(std::move(j));
  }
  nlohmann::json chains = nlohmann::json::array();
  for (const auto& c : trace.chains) {
    nlohmann::json states = nlohmann::json::array();
    for (const auto& h : c.hops) states.push_back(to_string(h.state()));
    chains.push_back({{"chain", c.spec.index}, {"hops", c.spec.hops}, {"states", states}});
  }
  nlohmann::json out{{"events", events}, {"chains", chains}, {"delivered", trace.delivered},
                     {"overdraw", trace.overdraw}};
  if (trace.recovered_secret) out["recovered_secret"] = trace.recovered_secret->to_hex();
  return out;
}

}  // namespace boomerang::contract
