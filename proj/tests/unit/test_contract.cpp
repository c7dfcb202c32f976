#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "boomerang/contract/contract.hpp"
#include "boomerang/contract/timeouts.hpp"
#include "boomerang/errors.hpp"
#include "support/interleavings.hpp"

using namespace boomerang;
using namespace boomerang::contract;
using namespace std::chrono_literals;

namespace {

struct Fixture {
  group::GroupParams g = group::make_group("toy-23-11");
  challenge::SecretPolynomial poly{{g->scalar(3), g->scalar(5)}};
  challenge::Preimage honest = challenge::eval_preimage(poly, 2);
  Scalar alpha0 = poly.secret();
  Funds amount = Funds::units(1);
  Funds fee = Funds::from_micros(10'000);  // 0.01
  Timestamp t0{};

  BoomerangContract make(Duration fwd = 3s, Duration rev = 6s) const {
    return BoomerangContract::deploy(g, group::oneway(*g, honest.value), group::oneway(*g, alpha0), amount, fee,
                                     t0, fwd, rev);
  }
};

}  // namespace

TEST_CASE("deploy") {
  Fixture f;
  auto c = f.make();
  CHECK(c.state() == ContractState::Deployed);
  CHECK(c.locked() == Funds::from_micros(1'010'000));
  CHECK_THROWS_AS(f.make(3s, 3s), UsageError);
  CHECK_THROWS_AS(f.make(4s, 3s), UsageError);
  CHECK_THROWS_AS(BoomerangContract::deploy(f.g, f.g->identity(), f.g->identity(), Funds{}, f.fee, f.t0, 1s, 2s),
                  UsageError);
  CHECK_NOTHROW(BoomerangContract::deploy(f.g, f.g->identity(), f.g->identity(), f.amount, Funds{}, f.t0, 1s, 2s));
}

TEST_CASE("deploy locks amount plus fee exactly once") {
  Fixture f;
  ChannelLiquidity ch{Funds::units(5), Funds::units(5), Funds{}};
  auto c = BoomerangContract::deploy(f.g, group::oneway(*f.g, f.honest.value), group::oneway(*f.g, f.alpha0),
                                     f.amount, f.fee, f.t0, 3s, 6s, ch);
  CHECK(ch.locked == f.amount + f.fee);
  CHECK(ch.p1_balance == Funds::units(5) - f.amount - f.fee);

  ChannelLiquidity poor{Funds::from_micros(1'000'000), Funds{}, Funds{}};
  CHECK_THROWS_AS(BoomerangContract::deploy(f.g, f.g->identity(), f.g->identity(), f.amount, f.fee, f.t0, 3s, 6s, poor),
                  LiquidityError);
  CHECK(poor.locked == Funds{});

  c.claim_forward(f.honest, f.t0 + 1s);
  c.claim_reverse(f.alpha0, f.t0 + 4s);
  c.release(ch, f.t0 + 4s);
  CHECK(ch.locked == Funds{});
  CHECK(ch.p1_balance == Funds::units(5) - f.fee);
  CHECK(ch.p2_balance == Funds::units(5) + f.fee);
}

TEST_CASE("claim_forward windows and verification") {
  Fixture f;
  {
    auto c = f.make();
    auto r = c.claim_forward(f.honest, f.t0);
    CHECK(r.accepted());
    CHECK(r.state == ContractState::ForwardClaimed);
    CHECK(c.revealed_preimage()->index == 2);
  }
  {
    auto c = f.make();
    CHECK(c.claim_forward(f.honest, f.t0 + 3s).accepted());  // closed interval
  }
  {
    auto c = f.make();
    auto r = c.claim_forward(f.honest, f.t0 + 3s + 1us);
    CHECK(r.rejection == Rejection::WindowClosed);
    CHECK(c.state() == ContractState::Deployed);
  }
  {
    // Every wrong scalar in the toy field is rejected.
    for (std::uint64_t x = 0; x < 11; ++x) {
      if (x == 2) continue;
      auto c = f.make();
      auto r = c.claim_forward(challenge::Preimage{2, f.g->scalar(x)}, f.t0 + 1s);
      CHECK(r.rejection == Rejection::VerificationFailed);
      CHECK(c.state() == ContractState::Deployed);
    }
  }
}

TEST_CASE("claim_reverse") {
  Fixture f;
  {
    auto c = f.make();
    c.claim_forward(f.honest, f.t0 + 1s);
    auto r = c.claim_reverse(f.alpha0, f.t0 + 5s);
    CHECK(r.accepted());
    CHECK(c.state() == ContractState::Reverted);
    auto p = c.settle(f.t0 + 5s);
    CHECK(p.to_p1 == Funds::units(1));
    CHECK(p.to_p2 == f.fee);
  }
  {
    auto c = f.make();
    CHECK_THROWS_AS(c.claim_reverse(f.alpha0, f.t0 + 1s), UsageError);
  }
  {
    auto c = f.make();
    c.claim_forward(f.honest, f.t0 + 1s);
    auto r = c.claim_reverse(f.alpha0, f.t0 + 6s + 1us);
    CHECK(r.rejection == Rejection::WindowClosed);
    CHECK(c.state() == ContractState::ForwardClaimed);
    auto p = c.settle(f.t0 + 7s);
    CHECK(p.to_p1 == Funds{});
    CHECK(p.to_p2 == Funds::from_micros(1'010'000));
  }
  {
    auto c = f.make();
    c.claim_forward(f.honest, f.t0 + 1s);
    CHECK(c.claim_reverse(f.alpha0 + f.g->scalar(1), f.t0 + 2s).rejection == Rejection::VerificationFailed);
  }
}

TEST_CASE("expire") {
  Fixture f;
  auto c = f.make();
  CHECK_THROWS_AS(c.expire(f.t0), UsageError);
  CHECK_THROWS_AS(c.expire(f.t0 + 3s), UsageError);
  CHECK(c.expire(f.t0 + 3s + 1us) == ContractState::Expired);
  auto p = c.settle(f.t0 + 4s);
  CHECK(p.to_p1 == Funds::from_micros(1'010'000));
  CHECK(p.to_p2 == Funds{});

  auto claimed = f.make();
  claimed.claim_forward(f.honest, f.t0);
  CHECK_THROWS_AS(claimed.expire(f.t0 + 4s), UsageError);
}

TEST_CASE("settle, cancel and renounce") {
  Fixture f;
  auto c = f.make();
  CHECK_THROWS_AS(c.settle(f.t0), UsageError);
  CHECK_THROWS_AS(c.renounce(), UsageError);
  c.cancel();
  CHECK(c.settle(f.t0).to_p1 == f.amount + f.fee);
  CHECK_THROWS_AS(c.cancel(), UsageError);

  auto d = f.make();
  d.claim_forward(f.honest, f.t0);
  CHECK_THROWS_AS(d.settle(f.t0 + 6s), UsageError);  // reverse window still open
  CHECK_THROWS_AS(d.cancel(), UsageError);
  d.renounce();
  CHECK(d.settle(f.t0 + 1s).to_p2 == f.amount + f.fee);
  CHECK_THROWS_AS(d.claim_reverse(f.alpha0, f.t0 + 2s), UsageError);
}

TEST_CASE("stagger_timeouts") {
  const Timestamp t0{};
  auto t = stagger_timeouts(3, t0, 10s);
  REQUIRE(t.hops.size() == 3);
  CHECK(t.forward_deadline(0) == t0 + 30s);
  CHECK(t.forward_deadline(1) == t0 + 20s);
  CHECK(t.forward_deadline(2) == t0 + 10s);
  CHECK(t.reverse_deadline(0) == t0 + 40s);
  CHECK(t.reverse_deadline(1) == t0 + 50s);
  CHECK(t.reverse_deadline(2) == t0 + 60s);

  auto one = stagger_timeouts(1, t0, 10s);
  CHECK(one.hops[0].delta_fwd == 10s);
  CHECK(one.hops[0].delta_rev == 20s);
  CHECK(timeouts_valid(one));

  for (std::size_t n = 1; n <= 20; ++n) {
    auto tn = stagger_timeouts(n, t0, 7s);
    CHECK(timeouts_valid(tn));
    CHECK(tn.forward_deadline(n - 1) == t0 + 7s);
    CHECK(tn.reverse_deadline(0) == t0 + 7s * static_cast<int>(n + 1));
  }
  CHECK_THROWS_AS(stagger_timeouts(0, t0, 1s), UsageError);
  CHECK_THROWS_AS(stagger_timeouts(2, t0, 0s), UsageError);

  HopTimeouts bad{t0, {{3s, 4s}, {3s, 5s}}};
  CHECK_FALSE(timeouts_valid(bad));
  HopTimeouts overlap{t0, {{5s, 4s}, {3s, 6s}}};
  CHECK_FALSE(timeouts_valid(overlap));
}

TEST_CASE("staggered windows tolerate per-hop delays below the step") {
  // Preimage travels from the payee towards the payer, alpha_0 the other way;
  // with each hop delayed by less than one step every claim lands in its window.
  std::mt19937_64 rng(17);
  const Duration step = 10s;
  for (std::size_t n = 1; n <= 20; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      auto t = stagger_timeouts(n, Timestamp{}, step);
      auto delay = [&] { return Duration(static_cast<std::int64_t>(rng() % step.count())); };
      // Payee reveals at the latest possible moment.
      Timestamp at = t.forward_deadline(n - 1);
      for (std::size_t s = 0; s < n; ++s) {
        const std::size_t k = n - 1 - s;
        if (s > 0) at += delay();
        CHECK(at <= t.forward_deadline(k));
      }
      // Payer reacts to the overdraw no earlier than the first hop's forward claim.
      Timestamp rev = std::max(at, t.forward_deadline(0)) + delay();
      for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) rev += delay();
        CHECK(rev <= t.reverse_deadline(k));
        // An intermediary reverted upstream can still revert downstream.
        if (k + 1 < n) CHECK(rev + delay() <= t.reverse_deadline(k + 1));
      }
    }
  }
}

TEST_CASE("exhaustive interleavings over a 10-tick clock") {
  Fixture f;
  interleavings::Setup s{f.g, f.honest, f.alpha0, f.amount, f.fee};
  auto r = interleavings::enumerate(s);
  CHECK(r.paths >= 50);
  CHECK(r.conservation_violations == 0);
  CHECK(r.negative_p2 == 0);
  CHECK(r.p1_overpays == 0);
  CHECK(r.nesting_violations == 0);
  CHECK(r.misclassified == 0);
  REQUIRE(r.outcomes.size() == 3);
  CHECK(r.outcomes.contains({1'010'000, 0}));
  CHECK(r.outcomes.contains({0, 1'010'000}));
  CHECK(r.outcomes.contains({1'000'000, 10'000}));
}
