#include "boomerang/simnet/transfers.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <boost/algorithm/string/split.hpp>
#include <boost/algorithm/string/trim.hpp>
#include <boost/random/lognormal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "boomerang/errors.hpp"

namespace boomerang::simnet {

namespace {

std::pair<NodeId, NodeId> endpoints(std::size_t nodes, Rng& rng) {
  boost::random::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(nodes - 1));
  const NodeId s = pick(rng);
  NodeId d = pick(rng);
  while (d == s) d = pick(rng);
  return {s, d};
}

}  // namespace

std::vector<Transfer> generate_transfers(std::size_t nodes, std::size_t count, const AmountModel& m, Rng& rng) {
  if (nodes < 2) throw UsageError("transfers need at least two nodes");
  if (!(m.median > 0 && m.sigma_log >= 0 && m.min > 0 && m.min <= m.max))
    throw UsageError("invalid amount model");
  boost::random::lognormal_distribution<double> amount(std::log(m.median), m.sigma_log);
  std::vector<Transfer> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto [s, d] = endpoints(nodes, rng);
    double a = amount(rng);
    while (a < m.min || a > m.max) a = amount(rng);
    out.push_back({s, d, Funds::from_double(a)});
  }
  return out;
}

std::vector<Transfer> resample_transfers(std::size_t nodes, std::size_t count, const std::vector<Funds>& amounts,
                                         Rng& rng) {
  if (nodes < 2) throw UsageError("transfers need at least two nodes");
  if (amounts.empty()) throw UsageError("amount trace is empty");
  boost::random::uniform_int_distribution<std::size_t> pick(0, amounts.size() - 1);
  std::vector<Transfer> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto [s, d] = endpoints(nodes, rng);
    out.push_back({s, d, amounts[pick(rng)]});
  }
  return out;
}

std::vector<Transfer> read_transfers_csv(std::istream& in) {
  std::vector<Transfer> out;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    return ParseError("transfers line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    boost::algorithm::trim(line);
    if (line.empty()) continue;
    if (line_no == 1 && line.starts_with("source")) continue;
    std::vector<std::string> fields;
    boost::algorithm::split(fields, line, [](char c) { return c == ','; });
    if (fields.size() != 3) throw fail("expected 3 fields");
    for (auto& f : fields) boost::algorithm::trim(f);
    Transfer t;
    try {
      std::size_t used = 0;
      const auto s = std::stoul(fields[0], &used);
      if (used != fields[0].size()) throw fail("bad source");
      const auto d = std::stoul(fields[1], &used);
      if (used != fields[1].size()) throw fail("bad destination");
      t.source = static_cast<NodeId>(s);
      t.destination = static_cast<NodeId>(d);
    } catch (const std::logic_error&) {
      throw fail("bad node id");
    }
    try {
      t.amount = Funds::parse(fields[2]);
    } catch (const ParseError& e) {
      throw fail(e.what());
    }
    if (t.amount <= Funds{}) throw fail("amount must be positive");
    if (t.source == t.destination) throw fail("source equals destination");
    out.push_back(t);
  }
  return out;
}

void write_transfers_csv(std::ostream& out, const std::vector<Transfer>& transfers) {
  out << "source,destination,amount\n";
  for (const auto& t : transfers) out << t.source << ',' << t.destination << ',' << t.amount.to_string() << '\n';
}

}  // namespace boomerang::simnet
