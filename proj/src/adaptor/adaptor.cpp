#include "boomerang/adaptor/adaptor.hpp"

#include <array>
#include <stdexcept>

#include <openssl/evp.h>

#include "boomerang/errors.hpp"

namespace boomerang::adaptor {

namespace {

void append_prefixed(std::vector<std::uint8_t>& buf, std::span<const std::uint8_t> item) {
  const auto n = static_cast<std::uint32_t>(item.size());
  buf.push_back(static_cast<std::uint8_t>(n >> 24));
  buf.push_back(static_cast<std::uint8_t>(n >> 16));
  buf.push_back(static_cast<std::uint8_t>(n >> 8));
  buf.push_back(static_cast<std::uint8_t>(n));
  buf.insert(buf.end(), item.begin(), item.end());
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32)
    throw std::runtime_error("SHA-256 failed");
  return out;
}

}  // namespace

KeyPair keygen(const Group& g, Rng& rng) { return keypair_from_secret(g, g.random_scalar(rng)); }

KeyPair keypair_from_secret(const Group& g, const Scalar& secret) {
  return KeyPair{secret, group::oneway(g, secret)};
}

Scalar challenge_hash(const Group& g, const GroupElement& public_key, const GroupElement& nonce, Message m) {
  std::vector<std::uint8_t> buf;
  append_prefixed(buf, public_key.bytes());
  append_prefixed(buf, nonce.bytes());
  append_prefixed(buf, m);
  const auto digest = sha256(buf);
  return g.scalar(group::from_bytes(digest));
}

SchnorrSignature schnorr_sign(const Group& g, const KeyPair& kp, Message m, Rng& rng) {
  return schnorr_sign_with_nonce(g, kp, m, g.random_scalar(rng));
}

SchnorrSignature schnorr_sign_with_nonce(const Group& g, const KeyPair& kp, Message m, const Scalar& r) {
  auto R = group::oneway(g, r);
  auto e = challenge_hash(g, kp.public_key, R, m);
  return SchnorrSignature{std::move(R), r + e * kp.secret};
}

bool schnorr_verify(const Group& g, const GroupElement& public_key, Message m, const SchnorrSignature& sig) {
  if (sig.s.modulus() != g.order()) return false;
  const auto e = challenge_hash(g, public_key, sig.nonce_point, m);
  const auto lhs = group::oneway(g, sig.s);
  const auto rhs = g.multiply(sig.nonce_point, g.power(public_key, e.value()));
  return lhs == rhs;
}

AdaptorSession adaptor_sign(const Group& g, const KeyPair& kp1, const KeyPair& kp2, const GroupElement& T,
                            Message m, Rng& rng) {
  auto r1 = g.random_scalar(rng);
  auto r2 = g.random_scalar(rng);
  return adaptor_sign_with_nonces(g, kp1, kp2, T, m, r1, r2);
}

AdaptorSession adaptor_sign_with_nonces(const Group& g, const KeyPair& kp1, const KeyPair& kp2,
                                        const GroupElement& T, Message m, const Scalar& r1, const Scalar& r2) {
  // Each party publishes (P_i, R_i); both then compute the same challenge.
  const auto R1 = group::oneway(g, r1);
  const auto R2 = group::oneway(g, r2);
  auto joint = g.multiply(kp1.public_key, kp2.public_key);
  auto aggregate = g.multiply(g.multiply(R1, R2), T);
  const auto e = challenge_hash(g, joint, aggregate, m);
  auto s1 = r1 + e * kp1.secret;
  auto s2 = r2 + e * kp2.secret;
  AdaptorSignature sig{std::move(aggregate), s1 + s2, T};
  return AdaptorSession{std::move(sig), std::move(s1), std::move(s2), std::move(joint)};
}

bool adaptor_verify(const Group& g, const GroupElement& joint_public_key, Message m, const AdaptorSignature& a) {
  const auto e = challenge_hash(g, joint_public_key, a.aggregate_nonce, m);
  const auto lhs = g.multiply(group::oneway(g, a.s_prime), a.commitment);
  const auto rhs = g.multiply(a.aggregate_nonce, g.power(joint_public_key, e.value()));
  return lhs == rhs;
}

SchnorrSignature complete(const Group& g, const AdaptorSignature& a, const Scalar& t) {
  if (!(group::oneway(g, t) == a.commitment)) throw UsageError("adaptor secret does not match commitment");
  return SchnorrSignature{a.aggregate_nonce, a.s_prime + t};
}

Scalar extract(const SchnorrSignature& total, const AdaptorSignature& a) {
  if (!(total.nonce_point == a.aggregate_nonce))
    throw UsageError("signature nonce differs from the adaptor's aggregate nonce");
  return total.s - a.s_prime;
}

std::vector<std::uint8_t> message_bytes(std::string_view text) { return {text.begin(), text.end()}; }

nlohmann::json to_json(const SchnorrSignature& sig) {
  return {{"R", sig.nonce_point.to_hex()}, {"s", sig.s.to_hex()}};
}

nlohmann::json to_json(const AdaptorSignature& sig) {
  return {{"R", sig.aggregate_nonce.to_hex()}, {"s_prime", sig.s_prime.to_hex()}, {"T", sig.commitment.to_hex()}};
}

SchnorrSignature schnorr_signature_from_json(const nlohmann::json& j, const Group& g) {
  try {
    return {g.decode_hex(j.at("R").get<std::string>()), g.scalar_from_hex(j.at("s").get<std::string>())};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("schnorr signature: ") + e.what());
  }
}

AdaptorSignature adaptor_signature_from_json(const nlohmann::json& j, const Group& g) {
  try {
    return {g.decode_hex(j.at("R").get<std::string>()), g.scalar_from_hex(j.at("s_prime").get<std::string>()),
            g.decode_hex(j.at("T").get<std::string>())};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("adaptor signature: ") + e.what());
  }
}

}  // namespace boomerang::adaptor
