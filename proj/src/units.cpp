#include "boomerang/units.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "boomerang/errors.hpp"

namespace boomerang {

Funds Funds::from_double(double value) {
  return Funds(static_cast<std::int64_t>(std::llround(value * static_cast<double>(kScale))));
}

Funds Funds::parse(std::string_view text) {
  const std::string_view original = text;
  auto fail = [&] { return ParseError("invalid amount '" + std::string(original) + "'"); };
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const auto whole_part = text.substr(0, dot);
  const auto frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole_part.empty() && frac_part.empty()) throw fail();
  if (frac_part.size() > 6) throw fail();
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  auto digits = [&](std::string_view part, std::int64_t& out) {
    if (part.empty()) return;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.front() == '-') throw fail();
  };
  digits(whole_part, whole);
  digits(frac_part, frac);
  for (auto k = frac_part.size(); k < 6; ++k) frac *= 10;
  if (whole > (INT64_MAX - frac) / kScale) throw fail();
  const auto micros = whole * kScale + frac;
  return Funds(negative ? -micros : micros);
}

std::string Funds::to_string() const {
  const auto whole = std::llabs(micros_) / kScale;
  const auto frac = std::llabs(micros_) % kScale;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%06lld", micros_ < 0 ? "-" : "", static_cast<long long>(whole),
                static_cast<long long>(frac));
  return buf;
}

}  // namespace boomerang
