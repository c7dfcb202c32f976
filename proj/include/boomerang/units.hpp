#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace boomerang {

/// Simulated clock. Time points count microseconds from the start of a run.
struct SimClock {
  using rep = std::int64_t;
  using period = std::micro;
  using duration = std::chrono::microseconds;
  using time_point = std::chrono::time_point<SimClock>;
  static constexpr bool is_steady = true;
};

using Duration = SimClock::duration;
using Timestamp = SimClock::time_point;

inline double to_seconds(Duration d) { return std::chrono::duration<double>(d).count(); }
inline double to_seconds(Timestamp t) { return to_seconds(t.time_since_epoch()); }

/// Fixed-point amount of funds with six decimal digits.
class Funds {
 public:
  static constexpr std::int64_t kScale = 1'000'000;

  constexpr Funds() = default;
  static constexpr Funds from_micros(std::int64_t micros) { return Funds(micros); }
  static constexpr Funds units(std::int64_t whole) { return Funds(whole * kScale); }
  /// Rounds to the nearest micro-unit.
  static Funds from_double(double value);
  /// Decimal text with at most six fractional digits. Throws ParseError.
  static Funds parse(std::string_view text);

  constexpr std::int64_t micros() const noexcept { return micros_; }
  double to_double() const noexcept { return static_cast<double>(micros_) / kScale; }
  /// Decimal rendering with six fractional digits, e.g. "1.010000".
  std::string to_string() const;

  constexpr Funds operator+(Funds o) const { return Funds(micros_ + o.micros_); }
  constexpr Funds operator-(Funds o) const { return Funds(micros_ - o.micros_); }
  constexpr Funds& operator+=(Funds o) { micros_ += o.micros_; return *this; }
  constexpr Funds& operator-=(Funds o) { micros_ -= o.micros_; return *this; }
  constexpr Funds operator*(std::int64_t k) const { return Funds(micros_ * k); }
  /// Truncating split into `parts` equal shares.
  constexpr Funds split(std::int64_t parts) const { return Funds(micros_ / parts); }

  friend constexpr auto operator<=>(Funds, Funds) = default;

 private:
  constexpr explicit Funds(std::int64_t micros) : micros_(micros) {}
  std::int64_t micros_ = 0;
};

}  // namespace boomerang
