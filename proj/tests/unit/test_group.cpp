#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "boomerang/errors.hpp"
#include "boomerang/group/group.hpp"
#include "support/toy_oracle.hpp"

using namespace boomerang;
using namespace boomerang::group;

namespace {

std::uint64_t residue(const Group& g, const GroupElement& e) {
  return static_cast<std::uint64_t>(dynamic_cast<const SchnorrGroup&>(g).residue(e));
}

}  // namespace

TEST_CASE("toy group parameters") {
  auto g = make_group("toy-23-11");
  CHECK(g->id() == "toy-23-11");
  CHECK(g->order() == 11);
  CHECK(residue(*g, g->generator()) == 2);
  CHECK(oracle::naive_pow(2, 11, 23) == 1);
  CHECK(residue(*g, g->identity()) == 1);
}

TEST_CASE("oneway on the toy group") {
  auto g = make_group("toy-23-11");
  CHECK(oneway(*g, g->scalar(0)) == g->identity());
  CHECK(residue(*g, oneway(*g, g->scalar(3))) == oracle::naive_pow(2, 3, 23));
  CHECK(residue(*g, oneway(*g, g->scalar(3))) == 8);
  auto prod = g->multiply(oneway(*g, g->scalar(5)), oneway(*g, g->scalar(6)));
  CHECK(prod == oneway(*g, g->scalar(0)));
  for (std::uint64_t x = 0; x < 11; ++x)
    CHECK(residue(*g, oneway(*g, g->scalar(x))) == oracle::naive_pow(2, x, 23));
}

TEST_CASE("combine") {
  auto g = make_group("toy-23-11");
  const std::vector<GroupElement> one{oneway(*g, g->scalar(7))};
  const std::vector<Scalar> c1{g->scalar(1)};
  CHECK(combine(*g, one, c1) == one[0]);

  const std::vector<GroupElement> hs{oneway(*g, g->scalar(3)), oneway(*g, g->scalar(4))};
  const std::vector<Scalar> cs{g->scalar(1), g->scalar(2)};
  CHECK(residue(*g, combine(*g, hs, cs)) == 1);

  const std::vector<Scalar> none;
  CHECK_THROWS_AS(combine(*g, hs, none), UsageError);
  CHECK_THROWS_AS(combine(*g, std::span<const GroupElement>{}, none), UsageError);
}

TEST_CASE("combine over polynomial commitments matches field evaluation") {
  auto g = make_group("toy-23-11");
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t v = 1 + rng() % 5;
    std::vector<std::uint64_t> coeffs;
    std::vector<GroupElement> hs;
    for (std::size_t j = 0; j <= v; ++j) {
      coeffs.push_back(rng() % 11);
      hs.push_back(oneway(*g, g->scalar(coeffs.back())));
    }
    const std::uint64_t i = rng() % 11;
    std::vector<Scalar> powers;
    std::uint64_t p = 1;
    for (std::size_t j = 0; j <= v; ++j, p = p * i % 11) powers.push_back(g->scalar(p));
    const auto expected = oracle::naive_pow(2, oracle::naive_eval(coeffs, i, 11), 23);
    CHECK(residue(*g, combine(*g, hs, powers)) == expected);
  }
}

TEST_CASE("homomorphism properties") {
  for (const char* id : {"toy-23-11", "toy-2000303-1000151"}) {
    auto g = make_group(id);
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      auto x = g->random_scalar(rng);
      auto y = g->random_scalar(rng);
      CHECK(oneway(*g, x + y) == g->multiply(oneway(*g, x), oneway(*g, y)));
      CHECK(oneway(*g, x * y) == g->power(oneway(*g, y), x.value()));
    }
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<GroupElement> hs;
      std::vector<Scalar> cs;
      Scalar sum = g->scalar(0);
      for (int k = 0; k < 4; ++k) {
        auto x = g->random_scalar(rng);
        auto c = g->random_scalar(rng);
        hs.push_back(oneway(*g, x));
        cs.push_back(c);
        sum += c * x;
      }
      CHECK(combine(*g, hs, cs) == oneway(*g, sum));
    }
  }
}

TEST_CASE("scalar field axioms") {
  auto g = make_group("toy-2000303-1000151");
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = g->random_scalar(rng), b = g->random_scalar(rng), c = g->random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == g->scalar(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == g->scalar(1));
  }
  CHECK_THROWS_AS(g->scalar(0).inverse(), UsageError);
  auto other = make_group("toy-23-11");
  CHECK_THROWS_AS(g->scalar(1) + other->scalar(1), UsageError);
}

TEST_CASE("random scalars stay in range and cover the toy field") {
  auto g = make_group("toy-23-11");
  Rng rng(99);
  std::vector<int> seen(11, 0);
  for (int i = 0; i < 2000; ++i) {
    auto s = g->random_scalar(rng);
    REQUIRE(s.value() < 11);
    ++seen[static_cast<int>(s.value())];
  }
  for (int count : seen) CHECK(count > 100);
}

TEST_CASE("hex encodings") {
  auto g = make_group("toy-23-11");
  CHECK(g->scalar(3).to_hex() == "03");
  CHECK(oneway(*g, g->scalar(3)).to_hex() == "08");
  CHECK(g->decode_hex("08") == oneway(*g, g->scalar(3)));
  CHECK(Scalar::from_hex("0a", 11) == g->scalar(10));
  CHECK_THROWS_AS(Scalar::from_hex("0b", 11), ParseError);
  CHECK_THROWS_AS(g->decode_hex("05"), ParseError);  // 5 is not in the order-11 subgroup
  CHECK_THROWS_AS(g->decode_hex("zz"), ParseError);
  CHECK_THROWS_AS(g->decode_hex("0008"), ParseError);
}

TEST_CASE("group identifiers") {
  CHECK_THROWS_AS(make_group("toy-24-11"), UsageError);
  CHECK_THROWS_AS(make_group("toy-23-7"), UsageError);
  CHECK_THROWS_AS(make_group("toy-23"), UsageError);
  CHECK_THROWS_AS(make_group("ed25519"), UsageError);
  auto g = make_group("toy-2000303-1000151");
  CHECK(g->order() == 1000151);
  CHECK(g->power(g->generator(), g->order()) == g->identity());
}

TEST_CASE("secp256k1 group") {
  auto g = make_group("secp-curve");
  CHECK(g->order() == BigInt("0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141"));
  CHECK(g->generator().to_hex() == "0279be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798");
  CHECK(g->identity().to_hex() == "00");
  CHECK(oneway(*g, g->scalar(0)) == g->identity());
  CHECK(oneway(*g, g->scalar(1)) == g->generator());
  // 2G, a standard test vector.
  CHECK(oneway(*g, g->scalar(2)).to_hex() ==
        "02c6047f9441ed7d6d3045406e95c07cd85c778e4b8cef3ca7abac09b95c709ee5");
  CHECK(g->power(g->generator(), g->order()) == g->identity());
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = g->random_scalar(rng);
    auto y = g->random_scalar(rng);
    CHECK(oneway(*g, x + y) == g->multiply(oneway(*g, x), oneway(*g, y)));
    auto h = oneway(*g, x);
    CHECK(g->decode_hex(h.to_hex()) == h);
    CHECK(x.to_hex().size() == 64);
  }
  CHECK_THROWS_AS(g->decode_hex("02" + std::string(64, '0')), ParseError);
}
