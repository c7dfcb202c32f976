#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "boomerang/contract/contract.hpp"
#include "boomerang/contract/timeouts.hpp"

namespace boomerang::contract {

using challenge::ChallengePlan;
using challenge::Index;

/// One redundant transaction of a transfer: a chain of `hops` contracts from
/// payer to payee, of which only the first `reached_hops` could be deployed.
struct ChainSpec {
  Index index = 0;  // challenge index used by this chain
  std::size_t hops = 1;
  std::size_t reached_hops = 1;

  bool reaches_payee() const noexcept { return reached_hops == hops; }
};

enum class Stage { Promise, Deliver, Cancel, Finish };

std::string_view to_string(Stage s);

struct StageEvent {
  Timestamp at;
  Stage stage;
  Index chain;
  std::size_t hop;
  std::string transition;
  std::string reason;
};

struct ChainResult {
  ChainSpec spec;
  std::vector<BoomerangContract> hops;
  bool delivered = false;
};

struct StageTrace {
  std::vector<StageEvent> events;
  std::vector<ChainResult> chains;
  std::size_t delivered = 0;
  bool overdraw = false;
  std::optional<Scalar> recovered_secret;
};

struct StageOptions {
  Timestamp t0{};
  Duration step = std::chrono::seconds(10);  // stagger step between hop timeouts
  Duration hop_latency = std::chrono::milliseconds(100);
  Funds amount = Funds::units(1);
  Funds fee = Funds{};
};

/// Drives the four stages of a transfer over the given chains.
///
/// Promise issues one challenge per chain from `plan` and deploys every
/// reachable hop with staggered timeouts. Deliver applies the payee's
/// revealed preimages along the delivered chains, payee side first. Cancel
/// dismantles every chain without an accepted delivery, payee side first.
/// Finish renounces the reverse components of the delivered chains; if more
/// than v deliveries were accepted the payer instead interpolates alpha_0 from
/// the revealed preimages and reverts every delivered chain.
StageTrace run_transfer_stages(ChallengePlan& plan, std::span<const ChainSpec> chains, std::size_t v,
                               std::span<const challenge::Preimage> deliveries,
                               const StageOptions& options = {});

nlohmann::json to_json(const StageTrace& trace);

}  // namespace boomerang::contract
