#include "ltl4c/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace ltl4c {

rational::rational(std::int64_t num, std::int64_t den) {
  if (den == 0)
    throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

namespace {

bool parse_digits(std::string_view s, std::int64_t& out) {
  if (s.empty())
    return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

} // namespace

bool rational::parse(std::string_view text, rational& out) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (text.empty() || text.front() == '+' || text.front() == '-')
    return false;

  std::int64_t scale = 1;
  if (text.back() == '%') {
    scale = 100;
    text.remove_suffix(1);
  }

  std::int64_t num = 0;
  std::int64_t den = 1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (scale != 1)
      return false;
    if (!parse_digits(text.substr(0, slash), num) || !parse_digits(text.substr(slash + 1), den))
      return false;
    if (den == 0)
      return false;
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15)
      return false;
    std::int64_t w = 0;
    std::int64_t f = 0;
    if (!parse_digits(whole, w) || !parse_digits(frac, f))
      return false;
    for (std::size_t i = 0; i < frac.size(); ++i)
      den *= 10;
    num = w * den + f;
  } else if (!parse_digits(text, num)) {
    return false;
  }
  out = rational(negative ? -num : num, den * scale);
  return true;
}

std::string rational::to_string() const {
  if (den_ == 1)
    return std::to_string(num_);
  std::int64_t d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1 || std::max(twos, fives) > 15)
    return std::to_string(num_) + "/" + std::to_string(den_);

  const int digits = std::max(twos, fives);
  std::int64_t pow10 = 1;
  for (int i = 0; i < digits; ++i)
    pow10 *= 10;
  const std::int64_t scaled = num_ * (pow10 / den_);
  const std::int64_t mag = scaled < 0 ? -scaled : scaled;
  std::string frac = std::to_string(mag % pow10);
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  return (scaled < 0 ? "-" : "") + std::to_string(mag / pow10) + "." + frac;
}

std::strong_ordering operator<=>(const rational& a, const rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

std::strong_ordering compare_scaled(std::uint64_t count, const rational& factor,
                                    std::uint64_t total) {
  const __int128 lhs = static_cast<__int128>(count) * factor.den();
  const __int128 rhs = static_cast<__int128>(factor.num()) * static_cast<__int128>(total);
  return lhs <=> rhs;
}

} // namespace ltl4c
