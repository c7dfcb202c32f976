#include "boomerang/challenge/challenge.hpp"

#include <string>

#include "boomerang/errors.hpp"

namespace boomerang::challenge {

namespace {

void check_index(const group::Group& params, Index i) {
  if (i < 1 || BigInt(i) >= params.order())
    throw UsageError("challenge index " + std::to_string(i) + " outside [1, q)");
}

// Distinct (index, value) pairs in ascending index order.
std::map<Index, Scalar> distinct_points(std::span<const Preimage> preimages) {
  std::map<Index, Scalar> points;
  for (const auto& p : preimages) {
    auto [it, inserted] = points.emplace(p.index, p.value);
    if (!inserted && !(it->second == p.value))
      throw InconsistentEvidence("conflicting evaluations for index " + std::to_string(p.index));
  }
  return points;
}

std::vector<std::pair<Scalar, Scalar>> interpolation_points(std::span<const Preimage> preimages,
                                                            std::size_t v) {
  auto points = distinct_points(preimages);
  if (points.size() < v + 1)
    throw InsufficientEvaluations("need " + std::to_string(v + 1) + " distinct evaluations, got " +
                                  std::to_string(points.size()));
  std::vector<std::pair<Scalar, Scalar>> out;
  for (const auto& [index, value] : points) {
    if (out.size() == v + 1) break;
    out.emplace_back(Scalar(index, value.modulus()), value);
  }
  for (const auto& [x, y] : out)
    if (x.is_zero()) throw UsageError("evaluation index is 0 mod q");
  return out;
}

}  // namespace

Scalar SecretPolynomial::evaluate(const BigInt& x) const {
  const auto& q = coefficients.front().modulus();
  Scalar xs(x, q);
  Scalar acc(0, q);
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * xs + *it;
  return acc;
}

ChallengePlan::ChallengePlan(CommitmentSet commitments) : commitments_(std::move(commitments)) {
  if (!commitments_.params || commitments_.commitments.size() < 2)
    throw UsageError("commitment set must hold at least two commitments");
}

GroupElement ChallengePlan::derive_challenge(Index i) {
  if (issued_.contains(i)) throw UsageError("challenge index " + std::to_string(i) + " already issued");
  auto h = challenge_from_commitments(commitments_, i);
  issued_.emplace(i, h);
  return h;
}

std::pair<Index, GroupElement> ChallengePlan::issue_next() {
  Index i = 1;
  while (issued_.contains(i)) ++i;
  return {i, derive_challenge(i)};
}

const GroupElement& ChallengePlan::challenge_for(Index i) const {
  auto it = issued_.find(i);
  if (it == issued_.end()) throw UsageError("challenge index " + std::to_string(i) + " was never issued");
  return it->second;
}

std::pair<SecretPolynomial, CommitmentSet> setup(const GroupParams& params, std::size_t v, Rng& rng) {
  if (v < 1 || BigInt(v) >= params->order() - 1)
    throw UsageError("polynomial degree must satisfy 1 <= v < q-1");
  SecretPolynomial poly;
  poly.coefficients.reserve(v + 1);
  for (std::size_t j = 0; j <= v; ++j) poly.coefficients.push_back(params->random_scalar(rng));
  auto commitments = commit(params, poly);
  return {std::move(poly), std::move(commitments)};
}

CommitmentSet commit(const GroupParams& params, const SecretPolynomial& poly) {
  CommitmentSet out{params, {}};
  out.commitments.reserve(poly.coefficients.size());
  for (const auto& a : poly.coefficients) out.commitments.push_back(group::oneway(*params, a));
  return out;
}

GroupElement challenge_from_commitments(const CommitmentSet& commitments, Index i) {
  const auto& params = *commitments.params;
  check_index(params, i);
  std::vector<Scalar> exponents;
  exponents.reserve(commitments.commitments.size());
  Scalar power = params.scalar(1);
  const Scalar base = params.scalar(i);
  for (std::size_t j = 0; j < commitments.commitments.size(); ++j) {
    exponents.push_back(power);
    power *= base;
  }
  return group::combine(params, commitments.commitments, exponents);
}

Preimage eval_preimage(const SecretPolynomial& poly, Index i) {
  if (i < 1 || BigInt(i) >= poly.secret().modulus())
    throw UsageError("evaluation index " + std::to_string(i) + " outside [1, q)");
  return Preimage{i, poly.evaluate(i)};
}

bool verify_preimage(const group::Group& params, const GroupElement& challenge, const Preimage& candidate) {
  if (candidate.value.modulus() != params.order()) return false;
  return group::oneway(params, candidate.value) == challenge;
}

Scalar recover_secret(std::span<const Preimage> preimages, std::size_t v) {
  auto points = interpolation_points(preimages, v);
  const auto& q = points.front().second.modulus();
  Scalar secret(0, q);
  for (std::size_t j = 0; j < points.size(); ++j) {
    // Lagrange basis at 0: prod_{m != j} x_m / (x_m - x_j).
    Scalar num(1, q), den(1, q);
    for (std::size_t m = 0; m < points.size(); ++m) {
      if (m == j) continue;
      num *= points[m].first;
      den *= points[m].first - points[j].first;
    }
    secret += points[j].second * num * den.inverse();
  }
  return secret;
}

SecretPolynomial recover_polynomial(std::span<const Preimage> preimages, std::size_t v) {
  auto points = interpolation_points(preimages, v);
  const auto& q = points.front().second.modulus();
  std::vector<Scalar> coeffs(v + 1, Scalar(0, q));
  for (std::size_t j = 0; j < points.size(); ++j) {
    // Expand the basis polynomial prod_{m != j} (x - x_m) coefficient-wise.
    std::vector<Scalar> basis{Scalar(1, q)};
    Scalar den(1, q);
    for (std::size_t m = 0; m < points.size(); ++m) {
      if (m == j) continue;
      std::vector<Scalar> next(basis.size() + 1, Scalar(0, q));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * points[m].first;
      }
      basis = std::move(next);
      den *= points[j].first - points[m].first;
    }
    const Scalar weight = points[j].second * den.inverse();
    for (std::size_t k = 0; k < basis.size(); ++k) coeffs[k] += basis[k] * weight;
  }
  return SecretPolynomial{std::move(coeffs)};
}

bool verify_cheat_proof(const CommitmentSet& commitments, const Scalar& alpha0_candidate) {
  const auto& params = *commitments.params;
  if (alpha0_candidate.modulus() != params.order()) return false;
  return group::oneway(params, alpha0_candidate) == commitments.commitments.front();
}

bool verify_payment_proof(const ChallengePlan& plan, const Preimage& candidate) {
  const auto& challenge = plan.challenge_for(candidate.index);
  return verify_preimage(*plan.commitments().params, challenge, candidate);
}

nlohmann::json to_json(const CommitmentSet& commitments) {
  nlohmann::json j;
  j["group"] = std::string(commitments.params->id());
  j["degree"] = commitments.degree();
  auto& arr = j["commitments"] = nlohmann::json::array();
  for (const auto& c : commitments.commitments) arr.push_back(c.to_hex());
  return j;
}

CommitmentSet commitment_set_from_json(const nlohmann::json& j) {
  try {
    auto params = group::make_group(j.at("group").get<std::string>());
    CommitmentSet out{params, {}};
    for (const auto& c : j.at("commitments")) out.commitments.push_back(params->decode_hex(c.get<std::string>()));
    if (out.commitments.size() < 2) throw ParseError("commitment set needs at least two commitments");
    if (j.contains("degree") && j["degree"].get<std::size_t>() != out.degree())
      throw ParseError("degree does not match number of commitments");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("commitment set: ") + e.what());
  }
}

nlohmann::json to_json(const Preimage& preimage) {
  return {{"index", preimage.index}, {"value", preimage.value.to_hex()}};
}

Preimage preimage_from_json(const nlohmann::json& j, const group::Group& params) {
  try {
    return Preimage{j.at("index").get<Index>(), params.scalar_from_hex(j.at("value").get<std::string>())};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("preimage: ") + e.what());
  }
}

}  // namespace boomerang::challenge
