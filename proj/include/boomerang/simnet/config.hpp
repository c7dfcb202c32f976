#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "boomerang/simnet/topology.hpp"
#include "boomerang/units.hpp"

namespace boomerang::simnet {

enum class SchemeKind { Retry, Redundancy, RedundantRetry };

/// A routing scheme. RedundantRetry sends min(u, cap) extra TXs upfront and
/// keeps the rest as retries.
struct Scheme {
  SchemeKind kind = SchemeKind::Retry;
  std::size_t cap = 10;

  /// "retry", "redundancy" or "redundant-retry-<cap>".
  std::string id() const;
  std::size_t upfront(std::size_t v, std::size_t u) const;
  std::size_t retries(std::size_t u) const;

  friend bool operator==(const Scheme&, const Scheme&) = default;
};

/// Throws UsageError on unknown ids.
Scheme parse_scheme(std::string_view id);

struct AmountModel {
  double median = 20.0;
  double sigma_log = 1.0;
  double min = 1.0;
  double max = 1000.0;
};

struct SimConfig {
  TopologyParams topology;
  std::size_t num_transfers = 50'000;
  std::size_t v = 25;
  std::size_t u = 0;
  Scheme scheme;
  Duration hop_delay_min = std::chrono::milliseconds(50);
  Duration hop_delay_max = std::chrono::milliseconds(150);
  std::size_t max_paths = 25;
  AmountModel amounts;
  std::uint64_t seed = 1;

  /// Throws UsageError naming the offending field.
  void validate() const;
};

}  // namespace boomerang::simnet
