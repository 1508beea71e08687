#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ltl4c {

/// Exact fraction, always stored in lowest terms with a positive denominator.
class rational {
public:
  constexpr rational() = default;
  rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }

  /// Parses "3", "0.95", "95%", or "1/3". Returns false on malformed text.
  static bool parse(std::string_view text, rational& out);

  /// Shortest text that parse() maps back to the same value:
  /// a decimal when the expansion terminates, "n/d" otherwise.
  std::string to_string() const;

  friend bool operator==(const rational&, const rational&) = default;
  friend std::strong_ordering operator<=>(const rational& a, const rational& b);

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Three-way comparison of count against factor * total, exact.
std::strong_ordering compare_scaled(std::uint64_t count, const rational& factor,
                                    std::uint64_t total);

} // namespace ltl4c
