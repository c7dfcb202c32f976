#pragma once

#include <span>
#include <string>

#include "boomerang/simnet/simulator.hpp"

namespace boomerang::simnet {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // unbiased sample standard deviation, 0 for one sample

  friend bool operator==(const MeanStd&, const MeanStd&) = default;
};

MeanStd mean_std(std::span<const double> samples);

struct MetricsRow {
  std::string algo;
  std::size_t u = 0;
  MeanStd throughput_success;  // funds / s / node
  MeanStd ttc_success;         // s
  MeanStd volume_success;      // funds

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

/// One row from the per-seed results of a single (scheme, u) point.
MetricsRow aggregate(const std::string& algo, std::size_t u, std::span<const RunResult> runs);

}  // namespace boomerang::simnet
