#pragma once

#include <cstddef>
#include <vector>

#include "boomerang/units.hpp"

namespace boomerang::contract {

struct HopTimeout {
  Duration delta_fwd;
  Duration delta_rev;
};

/// Per-hop timeouts of one path, hop 0 being the contract hosted by the payer.
/// Forward timeouts shrink towards the payee, reverse timeouts grow, and every
/// reverse window outlives every forward window.
struct HopTimeouts {
  Timestamp t0{};
  std::vector<HopTimeout> hops;

  Timestamp forward_deadline(std::size_t hop) const { return t0 + hops.at(hop).delta_fwd; }
  Timestamp reverse_deadline(std::size_t hop) const { return t0 + hops.at(hop).delta_rev; }
};

/// Hop k of n gets delta_fwd = (n-k)*step and delta_rev = (n+1+k)*step.
/// Throws UsageError for n == 0 or a nonpositive step.
HopTimeouts stagger_timeouts(std::size_t hops, Timestamp t0, Duration step);

/// Strict monotonicity along the path and max forward < min reverse.
bool timeouts_valid(const HopTimeouts& t);

}  // namespace boomerang::contract
