#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boomerang/group/scalar.hpp"

namespace boomerang::group {

using Rng = std::mt19937_64;

/// Opaque element of a prime-order group, held in its canonical encoding.
/// Two elements are equal iff their encodings are equal.
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<std::uint8_t> encoding) : encoding_(std::move(encoding)) {}

  std::span<const std::uint8_t> bytes() const noexcept { return encoding_; }
  std::string to_hex() const { return group::to_hex(encoding_); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  std::vector<std::uint8_t> encoding_;
};

/// A cyclic group of prime order q with a fixed generator g.
class Group {
 public:
  virtual ~Group() = default;

  virtual std::string_view id() const noexcept = 0;
  virtual const BigInt& order() const noexcept = 0;
  virtual GroupElement generator() const = 0;
  virtual GroupElement identity() const = 0;
  virtual GroupElement multiply(const GroupElement& a, const GroupElement& b) const = 0;
  /// a^e; `e` is reduced mod q.
  virtual GroupElement power(const GroupElement& a, const BigInt& e) const = 0;
  /// Decodes and validates an element (on-curve / in-subgroup). Throws ParseError.
  virtual GroupElement decode(std::span<const std::uint8_t> bytes) const = 0;

  GroupElement decode_hex(std::string_view hex) const;
  Scalar scalar(BigInt value) const { return Scalar(std::move(value), order()); }
  Scalar scalar_from_hex(std::string_view hex) const { return Scalar::from_hex(hex, order()); }
  /// Uniform in [0, q) by rejection sampling.
  Scalar random_scalar(Rng& rng) const;
};

using GroupParams = std::shared_ptr<const Group>;

/// Schnorr subgroup of Z_p^* of prime order q. Elements encode as the
/// residue, big-endian, padded to the byte width of p.
class SchnorrGroup final : public Group {
 public:
  /// Checks that p and q are prime, q divides p-1 and g has order q.
  SchnorrGroup(BigInt p, BigInt q, BigInt g);
  /// Picks a generator: the smallest small h with h^q = 1, else h^((p-1)/q).
  SchnorrGroup(BigInt p, BigInt q);

  std::string_view id() const noexcept override { return id_; }
  const BigInt& order() const noexcept override { return q_; }
  const BigInt& modulus() const noexcept { return p_; }
  GroupElement generator() const override { return encode(g_); }
  GroupElement identity() const override { return encode(1); }
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement power(const GroupElement& a, const BigInt& e) const override;
  GroupElement decode(std::span<const std::uint8_t> bytes) const override;

  BigInt residue(const GroupElement& a) const;

 private:
  GroupElement encode(const BigInt& residue) const;

  BigInt p_;
  BigInt q_;
  BigInt g_;
  std::size_t width_;
  std::string id_;
};

/// The secp256k1 curve group (backed by OpenSSL). Elements encode as 33-byte
/// compressed points; the point at infinity encodes as the single byte 0x00.
class Secp256k1Group final : public Group {
 public:
  Secp256k1Group();
  ~Secp256k1Group() override;
  Secp256k1Group(const Secp256k1Group&) = delete;
  Secp256k1Group& operator=(const Secp256k1Group&) = delete;

  std::string_view id() const noexcept override { return "secp-curve"; }
  const BigInt& order() const noexcept override { return n_; }
  GroupElement generator() const override;
  GroupElement identity() const override;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override;
  GroupElement power(const GroupElement& a, const BigInt& e) const override;
  GroupElement decode(std::span<const std::uint8_t> bytes) const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  BigInt n_;
};

/// "toy-23-11", "toy-<p>-<q>" or "secp-curve".
GroupParams make_group(std::string_view id);

/// H(x) = g^x.
GroupElement oneway(const Group& params, const Scalar& x);

/// prod elements[i]^coefficients[i]. Throws UsageError on empty or mismatched lists.
GroupElement combine(const Group& params, std::span<const GroupElement> elements,
                     std::span<const Scalar> coefficients);

}  // namespace boomerang::group
