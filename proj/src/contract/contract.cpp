#include "boomerang/contract/contract.hpp"

#include <string>

#include "boomerang/errors.hpp"

namespace boomerang::contract {

std::string_view to_string(ContractState s) {
  switch (s) {
    case ContractState::Deployed: return "deployed";
    case ContractState::ForwardClaimed: return "forward_claimed";
    case ContractState::Reverted: return "reverted";
    case ContractState::Expired: return "expired";
    case ContractState::Renounced: return "renounced";
    case ContractState::Cancelled: return "cancelled";
  }
  return "?";
}

std::string_view to_string(Rejection r) {
  switch (r) {
    case Rejection::VerificationFailed: return "verification_failed";
    case Rejection::WindowClosed: return "window_closed";
  }
  return "?";
}

BoomerangContract BoomerangContract::deploy(GroupParams params, GroupElement forward_challenge,
                                            GroupElement revert_challenge, Funds amount, Funds fee,
                                            Timestamp t0, Duration delta_fwd, Duration delta_rev) {
  if (!params) throw UsageError("contract needs group parameters");
  if (!(delta_fwd < delta_rev)) throw UsageError("timeouts must satisfy delta_fwd < delta_rev");
  if (delta_fwd < Duration::zero()) throw UsageError("negative forward timeout");
  if (amount <= Funds{}) throw UsageError("contract amount must be positive");
  if (fee < Funds{}) throw UsageError("contract fee must be nonnegative");
  BoomerangContract c;
  c.params_ = std::move(params);
  c.forward_challenge_ = std::move(forward_challenge);
  c.revert_challenge_ = std::move(revert_challenge);
  c.amount_ = amount;
  c.fee_ = fee;
  c.t0_ = t0;
  c.delta_fwd_ = delta_fwd;
  c.delta_rev_ = delta_rev;
  return c;
}

BoomerangContract BoomerangContract::deploy(GroupParams params, GroupElement forward_challenge,
                                            GroupElement revert_challenge, Funds amount, Funds fee,
                                            Timestamp t0, Duration delta_fwd, Duration delta_rev,
                                            ChannelLiquidity& channel) {
  auto c = deploy(std::move(params), std::move(forward_challenge), std::move(revert_challenge), amount, fee,
                  t0, delta_fwd, delta_rev);
  if (channel.p1_balance < c.locked())
    throw LiquidityError("channel balance " + channel.p1_balance.to_string() + " cannot cover " +
                         c.locked().to_string());
  channel.p1_balance -= c.locked();
  channel.locked += c.locked();
  return c;
}

ClaimResult BoomerangContract::claim_forward(const Preimage& candidate, Timestamp now) {
  if (state_ != ContractState::Deployed)
    throw UsageError("forward claim on a contract in state " + std::string(to_string(state_)));
  if (now < t0_ || now > forward_deadline()) return {state_, Rejection::WindowClosed};
  if (!challenge::verify_preimage(*params_, forward_challenge_, candidate))
    return {state_, Rejection::VerificationFailed};
  state_ = ContractState::ForwardClaimed;
  revealed_ = candidate;
  return {state_, std::nullopt};
}

ClaimResult BoomerangContract::claim_reverse(const Scalar& alpha0_candidate, Timestamp now) {
  if (state_ != ContractState::ForwardClaimed)
    throw UsageError("reverse claim on a contract in state " + std::string(to_string(state_)));
  if (now < t0_ || now > reverse_deadline()) return {state_, Rejection::WindowClosed};
  if (alpha0_candidate.modulus() != params_->order() ||
      !(group::oneway(*params_, alpha0_candidate) == revert_challenge_))
    return {state_, Rejection::VerificationFailed};
  state_ = ContractState::Reverted;
  return {state_, std::nullopt};
}

ContractState BoomerangContract::expire(Timestamp now) {
  if (state_ != ContractState::Deployed)
    throw UsageError("expire on a contract in state " + std::string(to_string(state_)));
  if (now <= forward_deadline()) throw UsageError("expire before the forward window closed");
  state_ = ContractState::Expired;
  return state_;
}

ContractState BoomerangContract::cancel() {
  if (state_ != ContractState::Deployed)
    throw UsageError("cancel on a contract in state " + std::string(to_string(state_)));
  state_ = ContractState::Cancelled;
  return state_;
}

ContractState BoomerangContract::renounce() {
  if (state_ != ContractState::ForwardClaimed)
    throw UsageError("renounce on a contract in state " + std::string(to_string(state_)));
  state_ = ContractState::Renounced;
  return state_;
}

bool BoomerangContract::is_settled(Timestamp now) const noexcept {
  switch (state_) {
    case ContractState::Deployed: return false;
    case ContractState::ForwardClaimed: return now > reverse_deadline();
    default: return true;
  }
}

Payout BoomerangContract::settle(Timestamp now) const {
  if (!is_settled(now))
    throw UsageError("settle on a non-terminal contract in state " + std::string(to_string(state_)));
  switch (state_) {
    case ContractState::Expired:
    case ContractState::Cancelled: return {locked(), Funds{}};
    case ContractState::ForwardClaimed:
    case ContractState::Renounced: return {Funds{}, locked()};
    case ContractState::Reverted: return {amount_, fee_};
    case ContractState::Deployed: break;
  }
  throw UsageError("unreachable contract state");
}

void BoomerangContract::release(ChannelLiquidity& channel, Timestamp now) const {
  const auto payout = settle(now);
  if (channel.locked < locked()) throw UsageError("channel escrow smaller than contract");
  channel.locked -= locked();
  channel.p1_balance += payout.to_p1;
  channel.p2_balance += payout.to_p2;
}

}  // namespace boomerang::contract
