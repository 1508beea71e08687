#include "ltl4c/verdict.hpp"

namespace ltl4c {

std::string_view token(verdict6 v) noexcept {
  switch (v) {
  case verdict6::bottom: return "FALSE";
  case verdict6::currently_false: return "CURRENTLY_FALSE";
  case verdict6::presumably_false: return "PRESUMABLY_FALSE";
  case verdict6::presumably_true: return "PRESUMABLY_TRUE";
  case verdict6::currently_true: return "CURRENTLY_TRUE";
  case verdict6::top: return "TRUE";
  }
  return "?";
}

std::string_view token(verdict4 v) noexcept { return token(to_verdict6(v)); }

std::string_view symbol_of(verdict6 v) noexcept {
  switch (v) {
  case verdict6::bottom: return "⊥";
  case verdict6::currently_false: return "⊥c";
  case verdict6::presumably_false: return "⊥p";
  case verdict6::presumably_true: return "⊤p";
  case verdict6::currently_true: return "⊤c";
  case verdict6::top: return "⊤";
  }
  return "?";
}

std::string_view symbol_of(verdict4 v) noexcept { return symbol_of(to_verdict6(v)); }

std::optional<verdict6> parse_verdict6(std::string_view text) noexcept {
  for (auto v : all_verdicts6)
    if (token(v) == text)
      return v;
  return std::nullopt;
}

} // namespace ltl4c
