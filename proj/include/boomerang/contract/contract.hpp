#pragma once

#include <optional>
#include <string_view>

#include "boomerang/challenge/challenge.hpp"
#include "boomerang/units.hpp"

namespace boomerang::contract {

using challenge::Preimage;
using group::GroupElement;
using group::GroupParams;
using group::Scalar;

enum class ContractState { Deployed, ForwardClaimed, Reverted, Expired, Renounced, Cancelled };

std::string_view to_string(ContractState s);

enum class Rejection { VerificationFailed, WindowClosed };

std::string_view to_string(Rejection r);

/// Result of a claim attempt: the (possibly unchanged) state and, when the
/// claim did not go through, why.
struct ClaimResult {
  ContractState state;
  std::optional<Rejection> rejection;

  bool accepted() const noexcept { return !rejection.has_value(); }
};

struct Payout {
  Funds to_p1;
  Funds to_p2;
};

/// The P1 -> P2 direction of a payment channel as seen by one contract:
/// spendable balances of both endpoints plus what is escrowed.
struct ChannelLiquidity {
  Funds p1_balance;
  Funds p2_balance;
  Funds locked;
};

/// Reversible HTLC-style escrow forwarding `amount + fee` from P1 to P2.
///
///  * forward: P2 reveals p with H(p) = forward_challenge within [t0, t0+delta_fwd]
///  * reverse: after a forward claim, P1 reveals a with H(a) = revert_challenge
///    within [t0, t0+delta_rev]; `amount` returns to P1, the fee stays with P2
///
/// Windows are closed intervals. One instance is owned by the hop hosting it.
class BoomerangContract {
 public:
  /// Throws UsageError unless delta_fwd < delta_rev, amount > 0 and fee >= 0.
  static BoomerangContract deploy(GroupParams params, GroupElement forward_challenge,
                                  GroupElement revert_challenge, Funds amount, Funds fee, Timestamp t0,
                                  Duration delta_fwd, Duration delta_rev);
  /// As above and escrows amount+fee out of `channel.p1_balance`; throws
  /// LiquidityError if the balance is short.
  static BoomerangContract deploy(GroupParams params, GroupElement forward_challenge,
                                  GroupElement revert_challenge, Funds amount, Funds fee, Timestamp t0,
                                  Duration delta_fwd, Duration delta_rev, ChannelLiquidity& channel);

  ClaimResult claim_forward(const Preimage& candidate, Timestamp now);
  /// Throws UsageError unless the forward component has been claimed.
  ClaimResult claim_reverse(const Scalar& alpha0_candidate, Timestamp now);
  /// Deployed -> Expired once now > t0+delta_fwd; UsageError otherwise.
  ContractState expire(Timestamp now);
  /// Deployed -> Cancelled (both parties agree to dismantle an unused contract).
  ContractState cancel();
  /// ForwardClaimed -> Renounced (P1 gives up the reverse component).
  ContractState renounce();

  /// Whether settle(now) is defined.
  bool is_settled(Timestamp now) const noexcept;
  /// Final split of amount+fee. UsageError if the contract can still move.
  Payout settle(Timestamp now) const;
  /// Moves the escrow of `channel` according to settle(now).
  void release(ChannelLiquidity& channel, Timestamp now) const;

  ContractState state() const noexcept { return state_; }
  Funds amount() const noexcept { return amount_; }
  Funds fee() const noexcept { return fee_; }
  Funds locked() const noexcept { return amount_ + fee_; }
  Timestamp t0() const noexcept { return t0_; }
  Duration delta_fwd() const noexcept { return delta_fwd_; }
  Duration delta_rev() const noexcept { return delta_rev_; }
  Timestamp forward_deadline() const noexcept { return t0_ + delta_fwd_; }
  Timestamp reverse_deadline() const noexcept { return t0_ + delta_rev_; }
  const GroupElement& forward_challenge() const noexcept { return forward_challenge_; }
  const GroupElement& revert_challenge() const noexcept { return revert_challenge_; }
  /// Preimage revealed by a successful forward claim.
  const std::optional<Preimage>& revealed_preimage() const noexcept { return revealed_; }

 private:
  BoomerangContract() = default;

  GroupParams params_;
  GroupElement forward_challenge_;
  GroupElement revert_challenge_;
  Funds amount_;
  Funds fee_;
  Timestamp t0_{};
  Duration delta_fwd_{};
  Duration delta_rev_{};
  ContractState state_ = ContractState::Deployed;
  std::optional<Preimage> revealed_;
};

}  // namespace boomerang::contract
