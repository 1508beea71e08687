#include "ltl4c/symbol_table.hpp"

namespace ltl4c {

symbol symbol_table::intern(std::string_view text) {
  if (auto it = index_.find(text); it != index_.end())
    return it->second;
  const auto id = static_cast<symbol>(names_.size());
  names_.emplace_back(text);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<symbol> symbol_table::find(std::string_view text) const {
  if (auto it = index_.find(text); it != index_.end())
    return it->second;
  return std::nullopt;
}

} // namespace ltl4c
