#include "boomerang/cli/harness.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <boost/algorithm/string/split.hpp>

#include "boomerang/contract/stages.hpp"
#include "boomerang/errors.hpp"

namespace boomerang::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kSimFields{"nodes",      "ring_neighbors", "rewire_prob", "balance_range",
                                       "num_transfers", "v",            "u",           "scheme",
                                       "hop_delay_ms", "max_paths",     "seed",        "amounts"};
const std::set<std::string> kSweepFields{"u_values", "schemes", "seeds", "amount_trace"};

template <typename T>
T field(const json& j, const std::string& key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(path + key + ": wrong type");
  }
}

std::pair<double, double> range_field(const json& j, const std::string& key, std::pair<double, double> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& r = j.at(key);
  if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
    throw ParseError(key + ": expected [low, high]");
  return {r[0].get<double>(), r[1].get<double>()};
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

double parse_double(const std::string& s, std::size_t line) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("report line " + std::to_string(line) + ": bad number '" + s + "'");
  return x;
}

}  // namespace

SimConfig sim_config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("config: expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (!kSimFields.contains(key) && !kSweepFields.contains(key)) throw ParseError("unknown field '" + key + "'");
  SimConfig c;
  c.topology.nodes = field<std::size_t>(j, "nodes", "", c.topology.nodes);
  c.topology.ring_neighbors = field<std::size_t>(j, "ring_neighbors", "", c.topology.ring_neighbors);
  c.topology.rewire_prob = field<double>(j, "rewire_prob", "", c.topology.rewire_prob);
  std::tie(c.topology.balance_min, c.topology.balance_max) =
      range_field(j, "balance_range", {c.topology.balance_min, c.topology.balance_max});
  c.num_transfers = field<std::size_t>(j, "num_transfers", "", c.num_transfers);
  c.v = field<std::size_t>(j, "v", "", c.v);
  c.u = field<std::size_t>(j, "u", "", c.u);
  if (j.contains("scheme")) {
    try {
      c.scheme = simnet::parse_scheme(field<std::string>(j, "scheme", "", ""));
    } catch (const UsageError& e) {
      throw ParseError(std::string("scheme: ") + e.what());
    }
  }
  auto [dmin, dmax] = range_field(j, "hop_delay_ms", {50.0, 150.0});
  c.hop_delay_min = std::chrono::duration_cast<Duration>(std::chrono::duration<double, std::milli>(dmin));
  c.hop_delay_max = std::chrono::duration_cast<Duration>(std::chrono::duration<double, std::milli>(dmax));
  c.max_paths = field<std::size_t>(j, "max_paths", "", c.max_paths);
  c.seed = field<std::uint64_t>(j, "seed", "", c.seed);
  if (j.contains("amounts")) {
    const auto& a = j.at("amounts");
    if (!a.is_object()) throw ParseError("amounts: expected an object");
    for (const auto& [key, _] : a.items())
      if (key != "median" && key != "sigma_log" && key != "min" && key != "max")
        throw ParseError("amounts." + key + ": unknown field");
    c.amounts.median = field<double>(a, "median", "amounts.", c.amounts.median);
    c.amounts.sigma_log = field<double>(a, "sigma_log", "amounts.", c.amounts.sigma_log);
    c.amounts.min = field<double>(a, "min", "amounts.", c.amounts.min);
    c.amounts.max = field<double>(a, "max", "amounts.", c.amounts.max);
  }
  try {
    c.validate();
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
  return c;
}

json to_json(const SimConfig& c) {
  return {{"nodes", c.topology.nodes},
          {"ring_neighbors", c.topology.ring_neighbors},
          {"rewire_prob", c.topology.rewire_prob},
          {"balance_range", {c.topology.balance_min, c.topology.balance_max}},
          {"num_transfers", c.num_transfers},
          {"v", c.v},
          {"u", c.u},
          {"scheme", c.scheme.id()},
          {"hop_delay_ms",
           {std::chrono::duration<double, std::milli>(c.hop_delay_min).count(),
            std::chrono::duration<double, std::milli>(c.hop_delay_max).count()}},
          {"max_paths", c.max_paths},
          {"seed", c.seed},
          {"amounts",
           {{"median", c.amounts.median},
            {"sigma_log", c.amounts.sigma_log},
            {"min", c.amounts.min},
            {"max", c.amounts.max}}}};
}

SweepSpec default_sweep_spec() {
  SweepSpec s;
  s.u_values = {0, 2, 4, 6, 8, 10, 15, 20, 25, 30, 40, 50, 75, 100, 125, 150};
  s.schemes = {simnet::parse_scheme("retry"), simnet::parse_scheme("redundancy"),
               simnet::parse_scheme("redundant-retry-10")};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) s.seeds.push_back(seed);
  return s;
}

SweepSpec sweep_spec_from_json(const json& j) {
  if (j.is_null()) return default_sweep_spec();
  SweepSpec s = default_sweep_spec();
  s.base = sim_config_from_json(j);
  if (!j.contains("u_values")) throw ParseError("u_values: required");
  s.u_values = field<std::vector<std::size_t>>(j, "u_values", "", {});
  if (s.u_values.empty()) throw ParseError("u_values: must not be empty");
  if (j.contains("schemes")) {
    s.schemes.clear();
    for (const auto& id : field<std::vector<std::string>>(j, "schemes", "", {})) {
      try {
        s.schemes.push_back(simnet::parse_scheme(id));
      } catch (const UsageError& e) {
        throw ParseError(std::string("schemes: ") + e.what());
      }
    }
    if (s.schemes.empty()) throw ParseError("schemes: must not be empty");
  }
  if (j.contains("seeds")) {
    s.seeds = field<std::vector<std::uint64_t>>(j, "seeds", "", {});
    if (s.seeds.empty()) throw ParseError("seeds: must not be empty");
    if (std::set(s.seeds.begin(), s.seeds.end()).size() != s.seeds.size())
      throw ParseError("seeds: must be distinct");
  }
  if (j.contains("amount_trace")) s.amount_trace = field<std::string>(j, "amount_trace", "", "");
  return s;
}

json to_json(const SweepSpec& s) {
  json j = to_json(s.base);
  j["u_values"] = s.u_values;
  json schemes = json::array();
  for (const auto& sc : s.schemes) schemes.push_back(sc.id());
  j["schemes"] = schemes;
  j["seeds"] = s.seeds;
  if (s.amount_trace) j["amount_trace"] = s.amount_trace->string();
  return j;
}

json read_config_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const auto text = ss.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return nullptr;
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

SweepSpec load_config(const std::filesystem::path& path) {
  auto spec = sweep_spec_from_json(read_config_json(path));
  if (spec.amount_trace && spec.amount_trace->is_relative())
    spec.amount_trace = path.parent_path() / *spec.amount_trace;
  return spec;
}

ResultTable run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  std::vector<Funds> amounts;
  if (spec.amount_trace) {
    std::ifstream in(*spec.amount_trace);
    if (!in) throw ParseError("cannot read amount trace " + spec.amount_trace->string());
    for (const auto& t : simnet::read_transfers_csv(in)) amounts.push_back(t.amount);
  }

  struct Job {
    Scheme scheme;
    std::size_t u;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& scheme : spec.schemes)
    for (auto u : spec.u_values)
      for (auto seed : spec.seeds) jobs.push_back({scheme, u, seed});

  std::vector<SeedRun> runs(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        SimConfig cfg = spec.base;
        cfg.scheme = jobs[i].scheme;
        cfg.u = jobs[i].u;
        cfg.seed = jobs[i].seed;
        simnet::RunOptions ro;
        ro.check_invariants = options.check_invariants;
        if (options.trace_for) ro.trace = options.trace_for(jobs[i].scheme.id(), jobs[i].u, jobs[i].seed);
        auto result = simnet::run_seeded(cfg, ro, amounts);
        if (!options.keep_outcomes) {
          result.outcomes.clear();
          result.outcomes.shrink_to_fit();
        }
        runs[i] = {jobs[i].scheme.id(), jobs[i].u, jobs[i].seed, std::move(result)};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const auto workers = std::max<std::size_t>(1, std::min(options.parallelism, jobs.size()));
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i]) continue;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw std::runtime_error("replication " + jobs[i].scheme.id() + " u=" + std::to_string(jobs[i].u) +
                             " seed=" + std::to_string(jobs[i].seed) + ": " + what);
  }

  ResultTable table;
  const auto per_point = spec.seeds.size();
  for (std::size_t start = 0; start < runs.size(); start += per_point) {
    std::vector<simnet::RunResult> point;
    for (std::size_t k = 0; k < per_point; ++k) point.push_back(runs[start + k].result);
    table.rows.push_back(simnet::aggregate(runs[start].algo, runs[start].u, point));
  }
  table.runs = std::move(runs);
  return table;
}

std::string report_csv(const std::vector<MetricsRow>& rows) {
  std::string out = std::string(kReportHeader) + "\n";
  for (const auto& r : rows) {
    out += r.algo + "," + std::to_string(r.u);
    for (const auto* m : {&r.throughput_success, &r.ttc_success, &r.volume_success})
      out += "," + format_double(m->mean) + "," + format_double(m->std);
    out += "\n";
  }
  return out;
}

void report(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << report_csv(table.rows);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<MetricsRow> parse_report(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kReportHeader) throw ParseError("report: missing or wrong header");
  std::vector<MetricsRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    boost::algorithm::split(f, line, [](char c) { return c == ','; });
    if (f.size() != 8) throw ParseError("report line " + std::to_string(line_no) + ": expected 8 fields");
    MetricsRow r;
    r.algo = f[0];
    r.u = static_cast<std::size_t>(parse_double(f[1], line_no));
    r.throughput_success = {parse_double(f[2], line_no), parse_double(f[3], line_no)};
    r.ttc_success = {parse_double(f[4], line_no), parse_double(f[5], line_no)};
    r.volume_success = {parse_double(f[6], line_no), parse_double(f[7], line_no)};
    rows.push_back(std::move(r));
  }
  return rows;
}

json to_json(const ResultTable& table) {
  json runs = json::array();
  for (const auto& r : table.runs)
    runs.push_back({{"algo", r.algo},
                    {"u", r.u},
                    {"seed", r.seed},
                    {"throughput_success", r.result.throughput_success},
                    {"ttc_success", r.result.ttc_success_mean},
                    {"volume_success", r.result.volume_success_mean},
                    {"successes", r.result.successes},
                    {"events", r.result.events}});
  return {{"runs", runs}};
}

ResultTable result_table_from_json(const json& j) {
  try {
    ResultTable table;
    for (const auto& r : j.at("runs")) {
      SeedRun run;
      run.algo = r.at("algo").get<std::string>();
      run.u = r.at("u").get<std::size_t>();
      run.seed = r.at("seed").get<std::uint64_t>();
      run.result.throughput_success = r.at("throughput_success").get<double>();
      run.result.ttc_success_mean = r.at("ttc_success").get<double>();
      run.result.volume_success_mean = r.at("volume_success").get<double>();
      run.result.successes = r.value("successes", std::size_t{0});
      run.result.events = r.value("events", std::uint64_t{0});
      table.runs.push_back(std::move(run));
    }
    // Regroup by (algo, u) in order of first appearance.
    std::vector<std::pair<std::string, std::size_t>> keys;
    for (const auto& r : table.runs)
      if (std::ranges::find(keys, std::pair{r.algo, r.u}) == keys.end()) keys.emplace_back(r.algo, r.u);
    for (const auto& [algo, u] : keys) {
      std::vector<simnet::RunResult> point;
      for (const auto& r : table.runs)
        if (r.algo == algo && r.u == u) point.push_back(r.result);
      table.rows.push_back(simnet::aggregate(algo, u, point));
    }
    return table;
  } catch (const json::exception& e) {
    throw ParseError(std::string("result table: ") + e.what());
  }
}

std::string crypto_demo(const std::string& group_id, std::size_t v, std::size_t u, std::size_t deliver,
                        std::uint64_t seed) {
  if (deliver > v + u) throw UsageError("cannot deliver more than v+u TXs");
  auto g = group::make_group(group_id);
  group::Rng rng(seed);
  auto [poly, commitments] = challenge::setup(g, v, rng);
  contract::ChallengePlan plan(commitments);

  std::ostringstream out;
  out << "group " << g->id() << ", v=" << v << ", u=" << u << ", deliver=" << deliver << "\n";
  out << "commitments:";
  for (const auto& c : commitments.commitments) out << " " << c.to_hex();
  out << "\n";

  std::vector<contract::ChainSpec> chains;
  for (std::size_t k = 1; k <= v + u; ++k) chains.push_back({k, 3, 3});
  std::vector<challenge::Preimage> deliveries;
  for (std::size_t k = 1; k <= deliver; ++k) deliveries.push_back(challenge::eval_preimage(poly, k));
  auto trace = contract::run_transfer_stages(plan, chains, v, deliveries);

  for (const auto& [index, challenge] : plan.issued()) out << "challenge " << index << ": " << challenge.to_hex() << "\n";
  for (const auto& d : deliveries) out << "delivered " << d.index << ": " << d.value.to_hex() << "\n";
  for (const auto& e : trace.events) {
    out << "  " << to_seconds(e.at) << "s " << to_string(e.stage) << " chain " << e.chain << " hop " << e.hop << " "
        << e.transition;
    if (!e.reason.empty()) out << " (" << e.reason << ")";
    out << "\n";
  }
  std::size_t finished = 0, cancelled = 0, reverted = 0;
  for (const auto& c : trace.chains) {
    const auto s = c.hops.front().state();
    finished += s == contract::ContractState::Renounced;
    cancelled += s == contract::ContractState::Cancelled;
    reverted += s == contract::ContractState::Reverted;
  }
  if (trace.overdraw) {
    out << "overdraw: recovered alpha_0 = " << trace.recovered_secret->to_hex() << "\n";
    out << "verify_cheat_proof: " << (challenge::verify_cheat_proof(commitments, *trace.recovered_secret) ? "true" : "false")
        << "\n";
    out << reverted << " chains reverted, " << cancelled << " cancelled\n";
  } else if (deliver == 0) {
    out << "all cancelled\n";
  } else if (deliver == v) {
    out << "all TXs final: " << finished << " chains finished, " << cancelled << " cancelled\n";
  } else {
    out << finished << " chains finished, " << cancelled << " cancelled\n";
  }
  return out.str();
}

}  // namespace boomerang::cli
