#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>

#include "boomerang/cli/harness.hpp"
#include "boomerang/errors.hpp"

using namespace boomerang;
using namespace boomerang::cli;
using nlohmann::json;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("boomerang_test_cli_" + name);
  std::ofstream(p) << text;
  return p;
}

SweepSpec small_spec() {
  auto spec = sweep_spec_from_json(json::parse(R"({
    "nodes": 10, "ring_neighbors": 4, "num_transfers": 200, "v": 3,
    "u_values": [0, 3], "schemes": ["retry", "redundancy"], "seeds": [1, 2, 3]
  })"));
  return spec;
}

}  // namespace

TEST_CASE("config: empty file gives the default sweep") {
  auto spec = load_config(write_temp("empty.json", "  \n"));
  auto def = default_sweep_spec();
  CHECK(spec.u_values == def.u_values);
  CHECK(spec.seeds.size() == 10);
  CHECK(spec.schemes.size() == 3);
  CHECK(spec.base.v == 25);
  CHECK(spec.base.topology.nodes == 100);
  CHECK(spec.base.num_transfers == 50000);
}

TEST_CASE("config: u_values is required in a non-empty file") {
  CHECK_THROWS_AS(load_config(write_temp("no_u.json", R"({"nodes": 20})")), ParseError);
  CHECK_THROWS_AS(load_config(write_temp("bad.json", "{nodes")), ParseError);
  CHECK_THROWS_AS(load_config("/nonexistent/boomerang.json"), ParseError);
}

TEST_CASE("config: field errors name the field") {
  auto expect_field = [](const char* text, const std::string& field) {
    try {
      sweep_spec_from_json(json::parse(text));
      FAIL("expected ParseError for " << text);
    } catch (const ParseError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(field) != std::string::npos, e.what());
    }
  };
  expect_field(R"({"u_values": [0], "nodes": "many"})", "nodes");
  expect_field(R"({"u_values": [0], "amounts": {"median": "x"}})", "amounts.median");
  expect_field(R"({"u_values": [0], "amounts": {"mode": 1}})", "amounts.mode");
  expect_field(R"({"u_values": [0], "hop_delay_ms": [50]})", "hop_delay_ms");
  expect_field(R"({"u_values": [0], "seeds": [1, 1]})", "seeds");
  expect_field(R"({"u_values": [0], "seeds": []})", "seeds");
  expect_field(R"({"u_values": []})", "u_values");
  expect_field(R"({"u_values": [0], "schemes": ["flood"]})", "schemes");
  expect_field(R"({"u_values": [0], "colour": 3})", "colour");
  expect_field(R"({"u_values": [0], "ring_neighbors": 3})", "ring_neighbors");
}

TEST_CASE("config: JSON round trip") {
  auto spec = load_config(BOOMERANG_CONFIG_DIR "/desk-scale.json");
  CHECK(spec.base.topology.nodes == 20);
  CHECK(spec.base.v == 5);
  CHECK(spec.u_values == std::vector<std::size_t>{0, 5, 10});
  auto again = sweep_spec_from_json(to_json(spec));
  CHECK(to_json(again) == to_json(spec));
  CHECK(again.base.hop_delay_min == spec.base.hop_delay_min);
  CHECK(again.base.hop_delay_max == spec.base.hop_delay_max);
}

TEST_CASE("config: full-scale file loads") {
  auto spec = load_config(BOOMERANG_CONFIG_DIR "/full-scale.json");
  CHECK(spec.base.topology.nodes == 100);
  CHECK(spec.base.v == 25);
  CHECK(spec.base.num_transfers == 50000);
  CHECK(spec.u_values.size() == 16);
  CHECK(spec.seeds.size() == 10);
}

TEST_CASE("sweep: a single seed has zero std") {
  auto spec = small_spec();
  spec.seeds = {7};
  auto table = run_sweep(spec);
  REQUIRE(table.rows.size() == 4);
  for (const auto& r : table.rows) {
    CHECK(r.throughput_success.std == 0.0);
    CHECK(r.ttc_success.std == 0.0);
    CHECK(r.volume_success.std == 0.0);
  }
}

TEST_CASE("sweep: rows follow spec order and match brute-force aggregation") {
  auto spec = small_spec();
  auto table = run_sweep(spec);
  REQUIRE(table.rows.size() == 4);
  REQUIRE(table.runs.size() == 12);
  CHECK(table.rows[0].algo == "retry");
  CHECK(table.rows[0].u == 0);
  CHECK(table.rows[1].u == 3);
  CHECK(table.rows[2].algo == "redundancy");

  std::map<std::pair<std::string, std::size_t>, std::vector<double>> th;
  for (const auto& r : table.runs) th[{r.algo, r.u}].push_back(r.result.throughput_success);
  for (const auto& row : table.rows) {
    const auto& xs = th.at({row.algo, row.u});
    REQUIRE(xs.size() == 3);
    double m = (xs[0] + xs[1] + xs[2]) / 3.0;
    double var = ((xs[0] - m) * (xs[0] - m) + (xs[1] - m) * (xs[1] - m) + (xs[2] - m) * (xs[2] - m)) / 2.0;
    CHECK(row.throughput_success.mean == doctest::Approx(m).epsilon(1e-12));
    CHECK(row.throughput_success.std == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
  }
}

TEST_CASE("sweep: report bytes are deterministic and independent of parallelism") {
  auto spec = small_spec();
  auto a = report_csv(run_sweep(spec).rows);
  auto b = report_csv(run_sweep(spec).rows);
  SweepOptions par;
  par.parallelism = 3;
  auto c = report_csv(run_sweep(spec, par).rows);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("sweep: invariants hold with checks enabled") {
  auto spec = small_spec();
  SweepOptions opt;
  opt.check_invariants = true;
  auto table = run_sweep(spec, opt);
  for (const auto& r : table.runs) CHECK(r.result.invariants.ok());
}

TEST_CASE("sweep: desk-scale config gives nine rows") {
  auto spec = load_config(BOOMERANG_CONFIG_DIR "/desk-scale.json");
  auto table = run_sweep(spec);
  CHECK(table.rows.size() == 9);
  CHECK(table.runs.size() == 45);
}

TEST_CASE("sweep: amount trace replaces the amount model") {
  auto trace = write_temp("amounts.csv", "source,destination,amount\n0,1,3\n1,2,3\n");
  auto spec = small_spec();
  spec.seeds = {1};
  spec.amount_trace = trace;
  SweepOptions opt;
  opt.keep_outcomes = true;
  auto table = run_sweep(spec, opt);
  for (const auto& r : table.runs)
    for (const auto& o : r.result.outcomes) CHECK(o.amount == Funds::units(3));
  spec.amount_trace = "/nonexistent/trace.csv";
  CHECK_THROWS_AS(run_sweep(spec), ParseError);
}

TEST_CASE("sweep: failing replication is named") {
  auto spec = small_spec();
  spec.base.max_paths = 0;
  std::string what;
  try {
    run_sweep(spec);
  } catch (const std::runtime_error& e) {
    what = e.what();
  }
  CHECK(what.find("retry u=0 seed=1") != std::string::npos);
  CHECK(what.find("max_paths") != std::string::npos);
}

TEST_CASE("report: header and CSV round trip") {
  CHECK(report_csv({}) == std::string(kReportHeader) + "\n");
  CHECK(parse_report(report_csv({})).empty());

  std::vector<MetricsRow> rows{{"retry", 0, {1.0 / 3.0, 0.1}, {0.7, 0.0}, {20.25, 1e-9}},
                               {"redundant-retry-10", 150, {123456.789, 2.5}, {1.0, 0.5}, {0.0, 0.0}}};
  auto csv = report_csv(rows);
  CHECK(parse_report(csv) == rows);
  CHECK(csv.find("retry,0,0.3333333333333333,0.1,0.7,0,20.25,1e-09\n") != std::string::npos);

  CHECK_THROWS_AS(parse_report("algo,u\n"), ParseError);
  CHECK_THROWS_AS(parse_report(std::string(kReportHeader) + "\nretry,0,1\n"), ParseError);
  CHECK_THROWS_AS(parse_report(std::string(kReportHeader) + "\nretry,0,1,2,3,4,5,x\n"), ParseError);
}

TEST_CASE("report: JSON table round trip regroups rows") {
  auto table = run_sweep(small_spec());
  auto back = result_table_from_json(to_json(table));
  CHECK(back.rows == table.rows);
  CHECK_THROWS_AS(result_table_from_json(json::parse(R"({"runs": [{"algo": 1}]})")), ParseError);
}

TEST_CASE("report: file output matches report_csv") {
  auto table = run_sweep(small_spec());
  auto path = std::filesystem::temp_directory_path() / "boomerang_test_cli_report.csv";
  report(table, path);
  std::ifstream in(path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text == report_csv(table.rows));
}

TEST_CASE("crypto demo: honest, overdraw and cancel") {
  auto honest = crypto_demo("toy-2000303-1000151", 2, 2, 2);
  CHECK(honest.find("all TXs final") != std::string::npos);
  CHECK(honest.find("overdraw") == std::string::npos);

  auto cheat = crypto_demo("toy-2000303-1000151", 2, 2, 3);
  CHECK(cheat.find("overdraw: recovered alpha_0") != std::string::npos);
  CHECK(cheat.find("verify_cheat_proof: true") != std::string::npos);

  auto none = crypto_demo("toy-23-11", 2, 1, 0);
  CHECK(none.find("all cancelled") != std::string::npos);

  CHECK(crypto_demo("toy-23-11", 2, 1, 2, 5) == crypto_demo("toy-23-11", 2, 1, 2, 5));
  CHECK_THROWS_AS(crypto_demo("toy-23-11", 2, 1, 4), UsageError);
  CHECK_THROWS(crypto_demo("no-such-group", 2, 1, 1));
}
