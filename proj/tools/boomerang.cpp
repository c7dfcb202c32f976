#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "boomerang/cli/harness.hpp"
#include "boomerang/contract/script.hpp"
#include "boomerang/errors.hpp"
#include "boomerang/simnet/transfers.hpp"

using namespace boomerang;
using nlohmann::json;

namespace {

// Flags shared by the simulation subcommands. Each one that is set
// overrides the matching config field.
struct SimFlags {
  std::string config;
  std::optional<std::size_t> nodes, ring_neighbors, num_transfers, v, u, max_paths;
  std::optional<double> rewire_prob;
  std::optional<std::string> scheme;
  std::optional<std::uint64_t> seed;
  std::vector<double> balance_range, hop_delay_ms;
  std::optional<double> amount_median, amount_sigma_log, amount_min, amount_max;
  std::optional<std::string> amount_trace;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config,-c", config, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--nodes", nodes, "number of nodes");
    cmd->add_option("--ring-neighbors", ring_neighbors, "lattice degree k");
    cmd->add_option("--rewire-prob", rewire_prob, "rewiring probability");
    cmd->add_option("--num-transfers", num_transfers, "number of transfers");
    cmd->add_option("--v", v, "TXs required per transfer");
    cmd->add_option("--u", u, "redundant or retry budget");
    cmd->add_option("--scheme", scheme, "retry | redundancy | redundant-retry-<cap>");
    cmd->add_option("--max-paths", max_paths, "edge-disjoint paths per pair");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--balance-range", balance_range, "directed channel balance range")->expected(2);
    cmd->add_option("--hop-delay-ms", hop_delay_ms, "per-hop delay range in ms")->expected(2);
    cmd->add_option("--amount-median", amount_median, "median transfer amount");
    cmd->add_option("--amount-sigma-log", amount_sigma_log, "log-normal sigma of amounts");
    cmd->add_option("--amount-min", amount_min, "smallest transfer amount");
    cmd->add_option("--amount-max", amount_max, "largest transfer amount");
    cmd->add_option("--amount-trace", amount_trace, "transfers CSV whose amounts are resampled");
  }

  json document(bool sweep) const {
    json doc = config.empty() ? json(nullptr) : cli::read_config_json(config);
    if (doc.is_null()) doc = sweep ? cli::to_json(cli::default_sweep_spec()) : json::object();
    auto set = [&doc](const char* key, const auto& value) {
      if (value) doc[key] = *value;
    };
    set("nodes", nodes);
    set("ring_neighbors", ring_neighbors);
    set("rewire_prob", rewire_prob);
    set("num_transfers", num_transfers);
    set("v", v);
    set("u", u);
    set("scheme", scheme);
    set("max_paths", max_paths);
    set("seed", seed);
    if (!balance_range.empty()) doc["balance_range"] = balance_range;
    if (!hop_delay_ms.empty()) doc["hop_delay_ms"] = hop_delay_ms;
    auto set_amount = [&doc](const char* key, const std::optional<double>& value) {
      if (value) doc["amounts"][key] = *value;
    };
    set_amount("median", amount_median);
    set_amount("sigma_log", amount_sigma_log);
    set_amount("min", amount_min);
    set_amount("max", amount_max);
    // A trace given on the command line is relative to the working directory.
    if (amount_trace) doc["amount_trace"] = std::filesystem::absolute(*amount_trace).string();
    return doc;
  }

  std::filesystem::path base_dir() const {
    return config.empty() ? std::filesystem::path{} : std::filesystem::path(config).parent_path();
  }
};

std::vector<Funds> read_amounts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read amount trace " + path.string());
  std::vector<Funds> out;
  for (const auto& t : simnet::read_transfers_csv(in)) out.push_back(t.amount);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// Writes to `path`, or stdout when it is empty or "-".
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json summary(const simnet::RunResult& r) {
  return {{"transfers", r.outcomes.size()},
          {"successes", r.successes},
          {"success_funds", r.success_funds.to_string()},
          {"makespan_s", to_seconds(r.makespan)},
          {"throughput_success", r.throughput_success},
          {"ttc_success", r.ttc_success_mean},
          {"volume_success", r.volume_success_mean},
          {"events", r.events},
          {"invariants_ok", r.invariants.ok()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boomerang transfers: crypto primitives and payment-network simulator"};
  app.require_subcommand(1);

  // gen-topology
  auto* gen = app.add_subcommand("gen-topology", "generate a topology (and optionally transfers)");
  SimFlags gen_flags;
  gen_flags.attach(gen);
  std::string gen_out, gen_transfers_out;
  gen->add_option("--out,-o", gen_out, "topology JSON output (default stdout)");
  gen->add_option("--transfers-out", gen_transfers_out, "also write the seed's transfers as CSV");

  // run
  auto* run = app.add_subcommand("run", "simulate one configuration");
  SimFlags run_flags;
  run_flags.attach(run);
  std::string run_topology, run_transfers, run_trace, run_out;
  bool run_check = false;
  run->add_option("--topology", run_topology, "topology JSON instead of generating one")->check(CLI::ExistingFile);
  run->add_option("--transfers", run_transfers, "transfers CSV instead of generating them")->check(CLI::ExistingFile);
  run->add_option("--trace-out", run_trace, "write the event trace as JSON lines");
  run->add_flag("--check-invariants", run_check, "verify balance invariants after every event");
  run->add_option("--out,-o", run_out, "summary JSON output (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run every (scheme, u, seed) of a config");
  SimFlags sweep_flags;
  sweep_flags.attach(sweep);
  std::vector<std::size_t> sweep_u;
  std::vector<std::uint64_t> sweep_seeds;
  std::vector<std::string> sweep_schemes;
  std::string sweep_out, sweep_runs_out;
  std::size_t parallelism = 1;
  bool sweep_check = false;
  sweep->add_option("--u-values", sweep_u, "u values to sweep");
  sweep->add_option("--seeds", sweep_seeds, "seeds to replicate over");
  sweep->add_option("--schemes", sweep_schemes, "schemes to compare");
  sweep->add_option("--parallelism,-j", parallelism, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_flag("--check-invariants", sweep_check, "verify balance invariants after every event");
  sweep->add_option("--out,-o", sweep_out, "report CSV output (default stdout)");
  sweep->add_option("--runs-out", sweep_runs_out, "per-seed results as JSON");

  // report
  auto* rep = app.add_subcommand("report", "aggregate per-seed results JSON into the report CSV");
  std::string rep_in, rep_out;
  rep->add_option("--in,-i", rep_in, "per-seed results from sweep --runs-out")->required()->check(CLI::ExistingFile);
  rep->add_option("--out,-o", rep_out, "report CSV output (default stdout)");

  // demo-crypto
  auto* demo = app.add_subcommand("demo-crypto", "walk one transfer through the four stages");
  std::string demo_group = "toy-2000303-1000151";
  std::size_t demo_v = 3, demo_u = 2, demo_deliver = 3;
  std::uint64_t demo_seed = 1;
  demo->add_option("--group", demo_group, "toy-23-11 | toy-2000303-1000151 | secp-curve");
  demo->add_option("--v", demo_v, "TXs required");
  demo->add_option("--u", demo_u, "redundant TXs");
  demo->add_option("--deliver", demo_deliver, "preimages the payee reveals");
  demo->add_option("--seed", demo_seed, "RNG seed");

  // emit-script
  auto* emit = app.add_subcommand("emit-script", "print an output script template");
  std::string emit_kind;
  contract::ScriptPlaceholders ph;
  emit->add_option("kind", emit_kind, "settle_funds | retaliate | fee")->required();
  emit->add_option("--h-pi", ph.h_pi, "H(p_i), hex");
  emit->add_option("--h-alpha0", ph.h_alpha0, "H(alpha_0), hex");
  emit->add_option("--pk-p1", ph.pk_p1, "hex");
  emit->add_option("--pk-p2", ph.pk_p2, "hex");
  emit->add_option("--pk-p1-tmp", ph.pk_p1_tmp, "hex");
  emit->add_option("--pk-p2-tmp", ph.pk_p2_tmp, "hex");
  emit->add_option("--locktime-fwd", ph.locktime_fwd, "4-byte hex");
  emit->add_option("--locktime-rev", ph.locktime_rev, "4-byte hex");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) {
      auto cfg = cli::sim_config_from_json(gen_flags.document(false));
      auto streams = simnet::seed_streams(cfg.seed);
      auto topo = simnet::gen_topology(cfg.topology, streams.topology);
      write_output(gen_out, to_json(topo).dump(2) + "\n");
      if (!gen_transfers_out.empty()) {
        std::ostringstream csv;
        simnet::write_transfers_csv(
            csv, simnet::generate_transfers(cfg.topology.nodes, cfg.num_transfers, cfg.amounts, streams.transfers));
        write_output(gen_transfers_out, csv.str());
      }
    } else if (run->parsed()) {
      auto doc = run_flags.document(false);
      auto cfg = cli::sim_config_from_json(doc);
      std::vector<Funds> amounts;
      if (doc.contains("amount_trace")) {
        std::filesystem::path p = doc["amount_trace"].get<std::string>();
        amounts = read_amounts(p.is_relative() ? run_flags.base_dir() / p : p);
      }
      simnet::RunOptions ro;
      ro.check_invariants = run_check;
      std::ofstream trace;
      if (!run_trace.empty()) {
        trace.open(run_trace, std::ios::binary);
        if (!trace) throw std::runtime_error("cannot write " + run_trace);
        ro.trace = [&trace](const json& rec) { trace << rec.dump() << '\n'; };
      }
      simnet::RunResult result;
      if (run_topology.empty() && run_transfers.empty()) {
        result = simnet::run_seeded(cfg, ro, amounts);
      } else {
        auto streams = simnet::seed_streams(cfg.seed);
        auto topo = run_topology.empty() ? simnet::gen_topology(cfg.topology, streams.topology)
                                         : simnet::topology_from_json(read_json_file(run_topology));
        cfg.topology.nodes = topo.node_count();
        std::vector<simnet::Transfer> transfers;
        if (run_transfers.empty()) {
          transfers = simnet::generate_transfers(cfg.topology.nodes, cfg.num_transfers, cfg.amounts, streams.transfers);
        } else {
          std::ifstream in(run_transfers);
          transfers = simnet::read_transfers_csv(in);
        }
        result = simnet::run_experiment(cfg, std::move(topo), transfers, streams.simulation, ro);
      }
      write_output(run_out, summary(result).dump(2) + "\n");
      if (run_check && !result.invariants.ok()) {
        std::cerr << "invariant violations detected\n";
        return 2;
      }
    } else if (sweep->parsed()) {
      auto doc = sweep_flags.document(true);
      if (!sweep_u.empty()) doc["u_values"] = sweep_u;
      if (!sweep_seeds.empty()) doc["seeds"] = sweep_seeds;
      if (!sweep_schemes.empty()) doc["schemes"] = sweep_schemes;
      auto spec = cli::sweep_spec_from_json(doc);
      if (spec.amount_trace && spec.amount_trace->is_relative())
        spec.amount_trace = sweep_flags.base_dir() / *spec.amount_trace;
      cli::SweepOptions opt;
      opt.parallelism = parallelism;
      opt.check_invariants = sweep_check;
      auto table = cli::run_sweep(spec, opt);
      if (!sweep_runs_out.empty()) write_output(sweep_runs_out, to_json(table).dump(2) + "\n");
      write_output(sweep_out, cli::report_csv(table.rows));
      if (sweep_check)
        for (const auto& r : table.runs)
          if (!r.result.invariants.ok()) {
            std::cerr << "invariant violations in " << r.algo << " u=" << r.u << " seed=" << r.seed << "\n";
            return 2;
          }
    } else if (rep->parsed()) {
      auto table = cli::result_table_from_json(read_json_file(rep_in));
      write_output(rep_out, cli::report_csv(table.rows));
    } else if (demo->parsed()) {
      std::cout << cli::crypto_demo(demo_group, demo_v, demo_u, demo_deliver, demo_seed);
    } else if (emit->parsed()) {
      std::cout << contract::emit_script(contract::script_kind_from_string(emit_kind), ph);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
