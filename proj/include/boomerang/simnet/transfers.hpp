#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include "boomerang/simnet/config.hpp"

namespace boomerang::simnet {

struct Transfer {
  NodeId source = 0;
  NodeId destination = 0;
  Funds amount;
};

/// Uniform distinct endpoints; log-normal amounts truncated to the model's
/// range by resampling.
std::vector<Transfer> generate_transfers(std::size_t nodes, std::size_t count, const AmountModel& model, Rng& rng);

/// Amounts drawn uniformly (with replacement) from an external trace, with
/// endpoints as in generate_transfers.
std::vector<Transfer> resample_transfers(std::size_t nodes, std::size_t count, const std::vector<Funds>& amounts,
                                         Rng& rng);

/// CSV with header "source,destination,amount". Throws ParseError with the
/// offending line number.
std::vector<Transfer> read_transfers_csv(std::istream& in);
void write_transfers_csv(std::ostream& out, const std::vector<Transfer>& transfers);

}  // namespace boomerang::simnet
