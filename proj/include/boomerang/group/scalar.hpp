#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace boomerang {

using BigInt = boost::multiprecision::cpp_int;

namespace group {

/// Element of the prime field Z_q. Carries its modulus so that mixing scalars
/// from different fields is caught at runtime.
class Scalar {
 public:
  /// Reduces `value` into [0, modulus). Negative inputs wrap.
  Scalar(BigInt value, BigInt modulus);

  const BigInt& value() const noexcept { return value_; }
  const BigInt& modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  Scalar operator+(const Scalar& rhs) const;
  Scalar operator-(const Scalar& rhs) const;
  Scalar operator*(const Scalar& rhs) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs) { return *this = *this + rhs; }
  Scalar& operator-=(const Scalar& rhs) { return *this = *this - rhs; }
  Scalar& operator*=(const Scalar& rhs) { return *this = *this * rhs; }

  /// Multiplicative inverse; throws UsageError on zero.
  Scalar inverse() const;
  Scalar pow(const BigInt& exponent) const;

  /// Lowercase big-endian hex, zero-padded to the byte width of the modulus.
  std::string to_hex() const;
  static Scalar from_hex(std::string_view hex, const BigInt& modulus);

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }

 private:
  void check_same_field(const Scalar& rhs) const;

  BigInt value_;
  BigInt modulus_;
};

// Byte/hex helpers shared by the group encodings.
std::size_t byte_width(const BigInt& n);
std::vector<std::uint8_t> to_bytes(const BigInt& n, std::size_t width);
BigInt from_bytes(std::span<const std::uint8_t> bytes);
std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);
bool is_hex(std::string_view text);

}  // namespace group
}  // namespace boomerang
