#include "boomerang/contract/timeouts.hpp"

#include <algorithm>

#include "boomerang/errors.hpp"

namespace boomerang::contract {

HopTimeouts stagger_timeouts(std::size_t hops, Timestamp t0, Duration step) {
  if (hops == 0) throw UsageError("a path needs at least one hop");
  if (step <= Duration::zero()) throw UsageError("timeout step must be positive");
  HopTimeouts out{t0, {}};
  out.hops.reserve(hops);
  const auto n = static_cast<std::int64_t>(hops);
  for (std::int64_t k = 0; k < n; ++k) out.hops.push_back({step * (n - k), step * (n + 1 + k)});
  return out;
}

bool timeouts_valid(const HopTimeouts& t) {
  if (t.hops.empty()) return false;
  for (std::size_t k = 1; k < t.hops.size(); ++k) {
    if (!(t.hops[k].delta_fwd < t.hops[k - 1].delta_fwd)) return false;
    if (!(t.hops[k].delta_rev > t.hops[k - 1].delta_rev)) return false;
  }
  auto max_fwd = std::ranges::max(t.hops, {}, &HopTimeout::delta_fwd).delta_fwd;
  auto min_rev = std::ranges::min(t.hops, {}, &HopTimeout::delta_rev).delta_rev;
  return max_fwd < min_rev;
}

}  // namespace boomerang::contract
