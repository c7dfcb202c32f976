#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "boomerang/group/group.hpp"

/// Preimage challenges intertwined through a committed polynomial.
///
/// The payee B draws a random polynomial P of degree v and publishes
/// commitments H(alpha_0), ..., H(alpha_v). The payer A derives the challenge
/// for transaction i as H(P(i)) purely from the commitments. B redeems
/// transaction i by revealing P(i); revealing more than v evaluations lets
/// anyone interpolate alpha_0, which is A's key to revert the transfer.
namespace boomerang::challenge {

using group::GroupElement;
using group::GroupParams;
using group::Rng;
using group::Scalar;

using Index = std::uint64_t;

struct SecretPolynomial {
  std::vector<Scalar> coefficients;  // alpha_0 .. alpha_v

  std::size_t degree() const noexcept { return coefficients.size() - 1; }
  const Scalar& secret() const { return coefficients.front(); }
  /// Horner evaluation at x (any integer, reduced mod q).
  Scalar evaluate(const BigInt& x) const;
};

struct CommitmentSet {
  GroupParams params;
  std::vector<GroupElement> commitments;  // H(alpha_0) .. H(alpha_v)

  std::size_t degree() const noexcept { return commitments.size() - 1; }
};

struct Preimage {
  Index index = 0;
  Scalar value;
};

/// Payer-side view: the commitments plus bookkeeping of which indices have
/// been issued as challenges. Single writer.
class ChallengePlan {
 public:
  explicit ChallengePlan(CommitmentSet commitments);

  const CommitmentSet& commitments() const noexcept { return commitments_; }
  std::size_t degree() const noexcept { return commitments_.degree(); }

  /// H(P(i)) = prod_j H(alpha_j)^(i^j). Records i as issued; throws
  /// UsageError if i is out of [1, q) or already issued.
  GroupElement derive_challenge(Index i);
  /// Issues the smallest index not yet used.
  std::pair<Index, GroupElement> issue_next();

  bool is_issued(Index i) const { return issued_.contains(i); }
  /// Challenge recorded for an issued index.
  const GroupElement& challenge_for(Index i) const;
  const std::map<Index, GroupElement>& issued() const noexcept { return issued_; }

 private:
  CommitmentSet commitments_;
  std::map<Index, GroupElement> issued_;
};

/// Draws v+1 uniform coefficients and commits to them. Requires 1 <= v < q-1.
std::pair<SecretPolynomial, CommitmentSet> setup(const GroupParams& params, std::size_t v, Rng& rng);

/// Commitments for a given polynomial.
CommitmentSet commit(const GroupParams& params, const SecretPolynomial& poly);

/// Challenge for index i computed from commitments only (no bookkeeping).
GroupElement challenge_from_commitments(const CommitmentSet& commitments, Index i);

/// p_i = P(i). Requires 1 <= i < q.
Preimage eval_preimage(const SecretPolynomial& poly, Index i);

bool verify_preimage(const group::Group& params, const GroupElement& challenge,
                     const Preimage& candidate);

/// Lagrange interpolation at 0 over the first v+1 distinct indices.
/// Throws InsufficientEvaluations / InconsistentEvidence.
Scalar recover_secret(std::span<const Preimage> preimages, std::size_t v);

/// All coefficients alpha_0..alpha_v of the interpolating polynomial.
SecretPolynomial recover_polynomial(std::span<const Preimage> preimages, std::size_t v);

/// Proof of cheating: H(candidate) equals the commitment to alpha_0.
bool verify_cheat_proof(const CommitmentSet& commitments, const Scalar& alpha0_candidate);

/// Proof of payment for an issued index. Throws UsageError for unissued ones.
bool verify_payment_proof(const ChallengePlan& plan, const Preimage& candidate);

// Out-of-band exchange encodings (hex fields).
nlohmann::json to_json(const CommitmentSet& commitments);
CommitmentSet commitment_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Preimage& preimage);
Preimage preimage_from_json(const nlohmann::json& j, const group::Group& params);

}  // namespace boomerang::challenge
