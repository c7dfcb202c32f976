#include "boomerang/simnet/config.hpp"

#include <algorithm>
#include <charconv>

#include "boomerang/errors.hpp"

namespace boomerang::simnet {

std::string Scheme::id() const {
  switch (kind) {
    case SchemeKind::Retry: return "retry";
    case SchemeKind::Redundancy: return "redundancy";
    case SchemeKind::RedundantRetry: return "redundant-retry-" + std::to_string(cap);
  }
  return "?";
}

std::size_t Scheme::upfront(std::size_t v, std::size_t u) const {
  switch (kind) {
    case SchemeKind::Retry: return v;
    case SchemeKind::Redundancy: return v + u;
    case SchemeKind::RedundantRetry: return v + std::min(u, cap);
  }
  return v;
}

std::size_t Scheme::retries(std::size_t u) const {
  switch (kind) {
    case SchemeKind::Retry: return u;
    case SchemeKind::Redundancy: return 0;
    case SchemeKind::RedundantRetry: return u - std::min(u, cap);
  }
  return 0;
}

Scheme parse_scheme(std::string_view id) {
  if (id == "retry") return {SchemeKind::Retry};
  if (id == "redundancy") return {SchemeKind::Redundancy};
  constexpr std::string_view prefix = "redundant-retry-";
  if (id.starts_with(prefix)) {
    const auto digits = id.substr(prefix.size());
    std::size_t cap = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cap);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty())
      return {SchemeKind::RedundantRetry, cap};
  }
  throw UsageError("unknown scheme '" + std::string(id) + "'");
}

void SimConfig::validate() const {
  auto require = [](bool ok, const char* field, const char* what) {
    if (!ok) throw UsageError(std::string(field) + ": " + what);
  };
  require(topology.nodes >= 2, "nodes", "must be at least 2");
  require(topology.ring_neighbors > 0 && topology.ring_neighbors % 2 == 0, "ring_neighbors",
          "must be even and positive");
  require(topology.ring_neighbors < topology.nodes, "ring_neighbors", "must be smaller than nodes");
  require(topology.rewire_prob >= 0.0 && topology.rewire_prob <= 1.0, "rewire_prob", "must lie in [0, 1]");
  require(topology.balance_min > 0.0 && topology.balance_min <= topology.balance_max, "balance_range",
          "must be positive and ordered");
  require(v > 0, "v", "must be positive");
  require(max_paths > 0, "max_paths", "must be positive");
  require(hop_delay_min >= Duration::zero() && hop_delay_min <= hop_delay_max, "hop_delay_ms",
          "must be nonnegative and ordered");
  require(amounts.median > 0.0 && amounts.sigma_log >= 0.0, "amounts", "median must be positive");
  require(amounts.min > 0.0 && amounts.min <= amounts.max, "amounts", "range must be positive and ordered");
}

}  // namespace boomerang::simnet
