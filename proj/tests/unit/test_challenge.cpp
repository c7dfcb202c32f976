#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "boomerang/challenge/challenge.hpp"
#include "boomerang/errors.hpp"
#include "support/toy_oracle.hpp"

using namespace boomerang;
using namespace boomerang::challenge;

namespace {

SecretPolynomial poly_of(const group::Group& g, std::vector<std::uint64_t> coeffs) {
  SecretPolynomial p;
  for (auto c : coeffs) p.coefficients.push_back(g.scalar(c));
  return p;
}

std::uint64_t u64(const Scalar& s) { return static_cast<std::uint64_t>(s.value()); }

}  // namespace

TEST_CASE("setup") {
  auto g = group::make_group("toy-23-11");
  Rng rng(1);
  auto [poly, commitments] = setup(g, 1, rng);
  CHECK(poly.coefficients.size() == 2);
  REQUIRE(commitments.commitments.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) CHECK(commitments.commitments[j] == group::oneway(*g, poly.coefficients[j]));

  Rng again(1);
  auto [poly2, commitments2] = setup(g, 1, again);
  CHECK(poly2.coefficients == poly.coefficients);

  CHECK_THROWS_AS(setup(g, 0, rng), UsageError);
  CHECK_THROWS_AS(setup(g, 10, rng), UsageError);  // v must stay below q-1
  CHECK_NOTHROW(setup(g, 9, rng));
}

TEST_CASE("forced polynomial commitments") {
  auto g = group::make_group("toy-23-11");
  auto c = commit(g, poly_of(*g, {3, 5}));
  CHECK(c.commitments[0].to_hex() == "08");
  CHECK(c.commitments[1].to_hex() == "09");
  CHECK(oracle::naive_pow(2, 5, 23) == 9);
}

TEST_CASE("derive_challenge and eval_preimage") {
  auto g = group::make_group("toy-23-11");
  auto poly = poly_of(*g, {3, 5});
  ChallengePlan plan(commit(g, poly));

  auto h2 = plan.derive_challenge(2);
  CHECK(h2.to_hex() == "04");
  CHECK(oracle::naive_pow(2, oracle::naive_eval({3, 5}, 2, 11), 23) == 4);
  CHECK(u64(eval_preimage(poly, 2).value) == 2);
  CHECK(u64(eval_preimage(poly, 1).value) == 8);
  CHECK(poly.evaluate(0) == poly.secret());

  // i = 1: every exponent is 1, so the challenge is the product of commitments.
  auto h1 = plan.derive_challenge(1);
  CHECK(h1 == g->multiply(plan.commitments().commitments[0], plan.commitments().commitments[1]));
  CHECK(h1 == group::oneway(*g, poly.coefficients[0] + poly.coefficients[1]));

  CHECK_THROWS_AS(plan.derive_challenge(2), UsageError);
  CHECK_THROWS_AS(plan.derive_challenge(0), UsageError);
  CHECK_THROWS_AS(plan.derive_challenge(11), UsageError);
  CHECK_THROWS_AS(eval_preimage(poly, 0), UsageError);

  auto [next, h3] = plan.issue_next();
  CHECK(next == 3);
  CHECK(h3 == group::oneway(*g, eval_preimage(poly, 3).value));
}

TEST_CASE("challenges agree with committer-side evaluation") {
  auto g = group::make_group("toy-2000303-1000151");
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t v = 1 + rng() % 6;
    auto [poly, commitments] = setup(g, v, rng);
    ChallengePlan plan(commitments);
    for (int k = 0; k < 3; ++k) {
      const Index i = 1 + rng() % 1000000;
      if (plan.is_issued(i)) continue;
      auto h = plan.derive_challenge(i);
      CHECK(h == group::oneway(*g, eval_preimage(poly, i).value));
    }
  }
}

TEST_CASE("verify_preimage") {
  auto g = group::make_group("toy-23-11");
  auto poly = poly_of(*g, {3, 5});
  ChallengePlan plan(commit(g, poly));
  auto h = plan.derive_challenge(4);
  auto p = eval_preimage(poly, 4);
  CHECK(verify_preimage(*g, h, p));
  CHECK_FALSE(verify_preimage(*g, h, Preimage{4, p.value + g->scalar(1)}));
  CHECK(verify_preimage(*g, g->identity(), Preimage{1, g->scalar(0)}));
}

TEST_CASE("recover_secret") {
  auto g = group::make_group("toy-23-11");
  std::vector<Preimage> pts{{1, g->scalar(8)}, {2, g->scalar(2)}};
  CHECK(u64(recover_secret(pts, 1)) == 3);

  // Brute-force oracle: the only degree-1 polynomial through both points.
  int matches = 0;
  oracle::for_each_polynomial(11, 2, [&](const std::vector<std::uint64_t>& c) {
    if (oracle::naive_eval(c, 1, 11) == 8 && oracle::naive_eval(c, 2, 11) == 2) {
      ++matches;
      CHECK(c[0] == 3);
    }
  });
  CHECK(matches == 1);

  CHECK_THROWS_AS(recover_secret(std::span(pts).first(1), 1), InsufficientEvaluations);
  std::vector<Preimage> dup{{1, g->scalar(8)}, {1, g->scalar(8)}};
  CHECK_THROWS_AS(recover_secret(dup, 1), InsufficientEvaluations);
  std::vector<Preimage> conflict{{1, g->scalar(8)}, {1, g->scalar(9)}, {2, g->scalar(2)}};
  CHECK_THROWS_AS(recover_secret(conflict, 1), InconsistentEvidence);
}

TEST_CASE("every (v+1)-subset of honest evaluations recovers alpha_0") {
  auto g = group::make_group("toy-23-11");
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t v = 1 + rng() % 5;
    auto [poly, commitments] = setup(g, v, rng);
    std::vector<Preimage> all;
    for (Index i = 1; i <= v + 3 && i < 11; ++i) all.push_back(eval_preimage(poly, i));
    // Brute-force search recovers the same constant term independently.
    std::vector<std::uint64_t> brute_alpha0;
    if (v <= 3) {
      oracle::for_each_polynomial(11, v + 1, [&](const std::vector<std::uint64_t>& c) {
        for (const auto& p : all)
          if (oracle::naive_eval(c, p.index, 11) != u64(p.value)) return;
        brute_alpha0.push_back(c[0]);
      });
      REQUIRE(brute_alpha0.size() == 1);
      CHECK(brute_alpha0[0] == u64(poly.secret()));
    }
    // Enumerate subsets of size v+1 via bitmasks.
    const auto n = all.size();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != v + 1) continue;
      std::vector<Preimage> subset;
      for (std::size_t k = 0; k < n; ++k)
        if (mask & (1u << k)) subset.push_back(all[k]);
      auto a0 = recover_secret(subset, v);
      CHECK(a0 == poly.secret());
      CHECK(verify_cheat_proof(commitments, a0));
    }
    CHECK(recover_polynomial(all, v).coefficients == poly.coefficients);
  }
}

TEST_CASE("verify_cheat_proof") {
  auto g = group::make_group("toy-23-11");
  Rng rng(2);
  auto [poly, commitments] = setup(g, 2, rng);
  CHECK(verify_cheat_proof(commitments, poly.secret()));
  CHECK_FALSE(verify_cheat_proof(commitments, poly.secret() + g->scalar(1)));
  std::vector<Preimage> over;
  for (Index i = 1; i <= 3; ++i) over.push_back(eval_preimage(poly, i));
  CHECK(verify_cheat_proof(commitments, recover_secret(over, 2)));
}

TEST_CASE("verify_payment_proof") {
  auto g = group::make_group("toy-2000303-1000151");
  Rng rng(77);
  int false_accepts = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto [poly, commitments] = setup(g, 2, rng);
    ChallengePlan plan(commitments);
    plan.derive_challenge(1);
    plan.derive_challenge(2);
    auto p1 = eval_preimage(poly, 1);
    CHECK(verify_payment_proof(plan, p1));
    if (verify_payment_proof(plan, Preimage{2, p1.value})) ++false_accepts;
    CHECK_FALSE(verify_payment_proof(plan, Preimage{1, p1.value + g->scalar(1)}));
  }
  // P(1) = P(2) happens with probability 1/q per trial.
  CHECK(false_accepts <= 1);

  auto small = group::make_group("toy-23-11");
  ChallengePlan plan(commit(small, poly_of(*small, {3, 5})));
  CHECK_THROWS_AS(verify_payment_proof(plan, Preimage{1, small->scalar(8)}), UsageError);
}

TEST_CASE("json exchange") {
  auto g = group::make_group("toy-23-11");
  auto c = commit(g, poly_of(*g, {3, 5}));
  auto j = to_json(c);
  CHECK(j.dump() == R"({"commitments":["08","09"],"degree":1,"group":"toy-23-11"})");
  auto back = commitment_set_from_json(j);
  CHECK(back.commitments == c.commitments);
  CHECK(back.params->id() == "toy-23-11");

  Preimage p{2, g->scalar(2)};
  CHECK(to_json(p).dump() == R"({"index":2,"value":"02"})");
  auto p2 = preimage_from_json(to_json(p), *g);
  CHECK(p2.index == 2);
  CHECK(p2.value == p.value);

  CHECK_THROWS_AS(commitment_set_from_json(nlohmann::json{{"group", "toy-23-11"}}), ParseError);
  CHECK_THROWS_AS(commitment_set_from_json(nlohmann::json::parse(R"({"group":"toy-23-11","commitments":["05","08"]})")),
                  ParseError);
}
