#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "boomerang/group/group.hpp"

/// Schnorr signatures and two-party adaptor signatures over any Group.
///
/// An adaptor signature for (P1*P2, m) is bound to a commitment T = g^t: given
/// the adaptor signature, knowing a valid total signature is equivalent to
/// knowing t. This replaces a hash-lock at the signature layer.
///
/// Keys are aggregated as the plain product P1*P2 (no rogue-key defence).
namespace boomerang::adaptor {

using group::Group;
using group::GroupElement;
using group::Rng;
using group::Scalar;

using Message = std::span<const std::uint8_t>;

struct KeyPair {
  Scalar secret;
  GroupElement public_key;
};

struct SchnorrSignature {
  GroupElement nonce_point;  // R
  Scalar s;
};

struct AdaptorSignature {
  GroupElement aggregate_nonce;  // R1 * R2 * T
  Scalar s_prime;                // s1' + s2'
  GroupElement commitment;       // T
};

/// Output of the two-party signing round.
struct AdaptorSession {
  AdaptorSignature signature;
  Scalar share1;  // s1'
  Scalar share2;  // s2'
  GroupElement joint_public_key;
};

KeyPair keygen(const Group& g, Rng& rng);
KeyPair keypair_from_secret(const Group& g, const Scalar& secret);

/// H~(P || R || m): SHA-256 over length-prefixed encodings, reduced mod q.
Scalar challenge_hash(const Group& g, const GroupElement& public_key, const GroupElement& nonce, Message m);

SchnorrSignature schnorr_sign(const Group& g, const KeyPair& kp, Message m, Rng& rng);
/// Signing with a caller-chosen nonce r.
SchnorrSignature schnorr_sign_with_nonce(const Group& g, const KeyPair& kp, Message m, const Scalar& r);
/// g^s == R * P^H~(P || R || m).
bool schnorr_verify(const Group& g, const GroupElement& public_key, Message m, const SchnorrSignature& sig);

AdaptorSession adaptor_sign(const Group& g, const KeyPair& kp1, const KeyPair& kp2, const GroupElement& T,
                            Message m, Rng& rng);
AdaptorSession adaptor_sign_with_nonces(const Group& g, const KeyPair& kp1, const KeyPair& kp2,
                                        const GroupElement& T, Message m, const Scalar& r1, const Scalar& r2);
/// Pre-signature check: g^s' * T == R * (P1 P2)^H~(P1 P2 || R || m).
bool adaptor_verify(const Group& g, const GroupElement& joint_public_key, Message m, const AdaptorSignature& a);

/// (R, s' + t). Throws UsageError unless g^t equals the commitment.
SchnorrSignature complete(const Group& g, const AdaptorSignature& a, const Scalar& t);
/// t = s - s'. Throws UsageError if the nonce points differ.
Scalar extract(const SchnorrSignature& total, const AdaptorSignature& a);

std::vector<std::uint8_t> message_bytes(std::string_view text);

nlohmann::json to_json(const SchnorrSignature& sig);
nlohmann::json to_json(const AdaptorSignature& sig);
SchnorrSignature schnorr_signature_from_json(const nlohmann::json& j, const Group& g);
AdaptorSignature adaptor_signature_from_json(const nlohmann::json& j, const Group& g);

}  // namespace boomerang::adaptor
