#include "boomerang/simnet/metrics.hpp"

#include <cmath>
#include <vector>

namespace boomerang::simnet {

MeanStd mean_std(std::span<const double> samples) {
  MeanStd out;
  if (samples.empty()) return out;
  double sum = 0.0;
  for (double x : samples) sum += x;
  out.mean = sum / static_cast<double>(samples.size());
  if (samples.size() < 2) return out;
  double sq = 0.0;
  for (double x : samples) sq += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(sq / static_cast<double>(samples.size() - 1));
  return out;
}

MetricsRow aggregate(const std::string& algo, std::size_t u, std::span<const RunResult> runs) {
  std::vector<double> throughput, ttc, volume;
  for (const auto& r : runs) {
    throughput.push_back(r.throughput_success);
    ttc.push_back(r.ttc_success_mean);
    volume.push_back(r.volume_success_mean);
  }
  return {algo, u, mean_std(throughput), mean_std(ttc), mean_std(volume)};
}

}  // namespace boomerang::simnet
