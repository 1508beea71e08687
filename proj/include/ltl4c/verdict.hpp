#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>

namespace ltl4c {

/// Verdict of a quantifier-free body on a finite prefix.
enum class verdict4 : std::uint8_t {
  bottom,           // every extension violates
  presumably_false, // FLTL false, some extension satisfies
  presumably_true,  // FLTL true, some extension violates
  top,              // every extension satisfies
};

/// Six-valued verdict, declared in lattice order so that the built-in
/// comparison operators follow bottom < ... < top.
enum class verdict6 : std::uint8_t {
  bottom,
  currently_false,
  presumably_false,
  presumably_true,
  currently_true,
  top,
};

inline constexpr std::array<verdict6, 6> all_verdicts6{
    verdict6::bottom,         verdict6::currently_false, verdict6::presumably_false,
    verdict6::presumably_true, verdict6::currently_true, verdict6::top};

constexpr verdict6 to_verdict6(verdict4 v) noexcept {
  switch (v) {
  case verdict4::bottom: return verdict6::bottom;
  case verdict4::presumably_false: return verdict6::presumably_false;
  case verdict4::presumably_true: return verdict6::presumably_true;
  case verdict4::top: return verdict6::top;
  }
  return verdict6::bottom;
}

constexpr bool is_true_side(verdict6 v) noexcept { return v >= verdict6::presumably_true; }
constexpr bool is_true_side(verdict4 v) noexcept { return v >= verdict4::presumably_true; }
constexpr bool is_permanent(verdict6 v) noexcept {
  return v == verdict6::top || v == verdict6::bottom;
}
constexpr bool is_permanent(verdict4 v) noexcept {
  return v == verdict4::top || v == verdict4::bottom;
}

constexpr verdict6 meet(verdict6 a, verdict6 b) noexcept { return a < b ? a : b; }
constexpr verdict6 join(verdict6 a, verdict6 b) noexcept { return a < b ? b : a; }

/// Wire tokens: TRUE, FALSE, CURRENTLY_TRUE, ... .
std::string_view token(verdict6 v) noexcept;
std::string_view token(verdict4 v) noexcept;
/// Mathematical notation for human output.
std::string_view symbol_of(verdict6 v) noexcept;
std::string_view symbol_of(verdict4 v) noexcept;

std::optional<verdict6> parse_verdict6(std::string_view token) noexcept;

/// Set of six-valued verdicts, used as the B argument of count queries.
class verdict_set {
public:
  constexpr verdict_set() = default;
  constexpr verdict_set(std::initializer_list<verdict6> values) {
    for (auto v : values)
      bits_ |= bit(v);
  }
  static constexpr verdict_set all() { return from_bits(0x3f); }

  constexpr bool contains(verdict6 v) const noexcept { return bits_ & bit(v); }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr verdict_set without(verdict_set other) const noexcept {
    return from_bits(bits_ & ~other.bits_);
  }
  constexpr std::uint8_t bits() const noexcept { return bits_; }

private:
  static constexpr std::uint8_t bit(verdict6 v) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(v));
  }
  static constexpr verdict_set from_bits(std::uint8_t b) {
    verdict_set s;
    s.bits_ = b;
    return s;
  }
  std::uint8_t bits_ = 0;
};

} // namespace ltl4c
