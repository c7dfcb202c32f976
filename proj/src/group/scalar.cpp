#include "boomerang/group/scalar.hpp"

#include <iterator>

#include "boomerang/errors.hpp"

namespace boomerang::group {

namespace {

BigInt reduce(BigInt v, const BigInt& m) {
  v %= m;
  if (v < 0) v += m;
  return v;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Scalar::Scalar(BigInt value, BigInt modulus) : value_(), modulus_(std::move(modulus)) {
  if (modulus_ < 2) throw UsageError("scalar modulus must be at least 2");
  value_ = reduce(std::move(value), modulus_);
}

void Scalar::check_same_field(const Scalar& rhs) const {
  if (modulus_ != rhs.modulus_) throw UsageError("scalars from different fields");
}

Scalar Scalar::operator+(const Scalar& rhs) const {
  check_same_field(rhs);
  return Scalar(value_ + rhs.value_, modulus_);
}

Scalar Scalar::operator-(const Scalar& rhs) const {
  check_same_field(rhs);
  return Scalar(value_ - rhs.value_, modulus_);
}

Scalar Scalar::operator*(const Scalar& rhs) const {
  check_same_field(rhs);
  return Scalar(value_ * rhs.value_, modulus_);
}

Scalar Scalar::operator-() const { return Scalar(-value_, modulus_); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw UsageError("inverse of zero scalar");
  // q is prime: x^(q-2) = x^-1.
  return pow(modulus_ - 2);
}

Scalar Scalar::pow(const BigInt& exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  return Scalar(boost::multiprecision::powm(value_, exponent, modulus_), modulus_);
}

std::string Scalar::to_hex() const { return group::to_hex(to_bytes(value_, byte_width(modulus_))); }

Scalar Scalar::from_hex(std::string_view hex, const BigInt& modulus) {
  auto bytes = group::from_hex(hex);
  BigInt v = from_bytes(bytes);
  if (v >= modulus) throw ParseError("scalar out of range: " + std::string(hex));
  return Scalar(std::move(v), modulus);
}

std::size_t byte_width(const BigInt& n) {
  if (n <= 0) return 1;
  return (boost::multiprecision::msb(n) / 8) + 1;
}

std::vector<std::uint8_t> to_bytes(const BigInt& n, std::size_t width) {
  std::vector<std::uint8_t> out;
  boost::multiprecision::export_bits(n, std::back_inserter(out), 8);
  if (n == 0) out.clear();
  if (out.size() > width) throw UsageError("value does not fit requested width");
  out.insert(out.begin(), width - out.size(), 0);
  return out;
}

BigInt from_bytes(std::span<const std::uint8_t> bytes) {
  BigInt v = 0;
  if (!bytes.empty()) boost::multiprecision::import_bits(v, bytes.begin(), bytes.end(), 8);
  return v;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

bool is_hex(std::string_view text) {
  if (text.empty() || text.size() % 2 != 0) return false;
  for (char c : text)
    if (hex_digit(c) < 0) return false;
  return true;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (!is_hex(hex)) throw ParseError("invalid hex string: '" + std::string(hex) + "'");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(hex_digit(hex[2 * i]) << 4 | hex_digit(hex[2 * i + 1]));
  return out;
}

}  // namespace boomerang::group
