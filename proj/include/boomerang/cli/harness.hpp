#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "boomerang/simnet/metrics.hpp"

namespace boomerang::cli {

using simnet::MetricsRow;
using simnet::Scheme;
using simnet::SimConfig;

struct SweepSpec {
  SimConfig base;
  std::vector<std::size_t> u_values;
  std::vector<Scheme> schemes;
  std::vector<std::uint64_t> seeds;
  /// CSV of transfers whose amounts replace the log-normal model.
  std::optional<std::filesystem::path> amount_trace;
};

/// Reads the simulation fields of a config object; absent fields keep their
/// defaults. Throws ParseError naming the field path.
SimConfig sim_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SimConfig& cfg);

/// A whitespace-only document yields the default sweep. Otherwise u_values
/// is required; schemes default to all three, seeds to 1..10.
SweepSpec sweep_spec_from_json(const nlohmann::json& j);
SweepSpec default_sweep_spec();
nlohmann::json to_json(const SweepSpec& spec);
/// Throws ParseError on unreadable or malformed files.
SweepSpec load_config(const std::filesystem::path& path);
/// Config object of a file, or an empty object for an empty file.
nlohmann::json read_config_json(const std::filesystem::path& path);

struct SeedRun {
  std::string algo;
  std::size_t u = 0;
  std::uint64_t seed = 0;
  simnet::RunResult result;
};

struct ResultTable {
  std::vector<MetricsRow> rows;  // one per (scheme, u), in spec order
  std::vector<SeedRun> runs;     // raw per-seed results behind the rows
};

struct SweepOptions {
  std::size_t parallelism = 1;
  bool check_invariants = false;
  bool keep_outcomes = false;  // per-transfer outcomes are dropped unless asked for
  /// Optional event sink per replication, called before it starts.
  std::function<simnet::TraceSink(const std::string& algo, std::size_t u, std::uint64_t seed)> trace_for;
};

/// Runs every (scheme, u, seed) replication, each with the topology and
/// transfers of its seed. A failing replication aborts the sweep with a
/// runtime_error naming it.
ResultTable run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

inline constexpr const char* kReportHeader =
    "algo,u,throughput_success-mean,throughput_success-std,ttc_for_successful_tx-mean,"
    "ttc_for_successful_tx-std,volume_for_successful_tx-mean,volume_for_successful_tx-std";

std::string report_csv(const std::vector<MetricsRow>& rows);
void report(const ResultTable& table, const std::filesystem::path& path);
/// Parses report_csv output. Throws ParseError.
std::vector<MetricsRow> parse_report(const std::string& csv);

nlohmann::json to_json(const ResultTable& table);
ResultTable result_table_from_json(const nlohmann::json& j);

/// Promise/Deliver/Cancel/Finish over v+u chains with `deliver` deliveries.
/// Throws UsageError if deliver > v+u.
std::string crypto_demo(const std::string& group_id, std::size_t v, std::size_t u, std::size_t deliver,
                        std::uint64_t seed = 1);

}  // namespace boomerang::cli
