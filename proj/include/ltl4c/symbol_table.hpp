#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace ltl4c {

using symbol = std::uint32_t;

/// Interns keys and values so events and value vectors hold small integers.
///
/// Interning mutates the table and is single-writer; lookups may run
/// concurrently with each other but not with intern().
class symbol_table {
public:
  symbol intern(std::string_view text);
  std::optional<symbol> find(std::string_view text) const;
  const std::string& name(symbol id) const { return names_[id]; }
  std::size_t size() const noexcept { return names_.size(); }

private:
  struct hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::deque<std::string> names_;
  std::unordered_map<std::string_view, symbol, hash, std::equal_to<>> index_;
};

} // namespace ltl4c
