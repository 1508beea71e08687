#include "ltl4c/trace.hpp"

#include <istream>
#include <regex>

namespace ltl4c {

std::optional<event> parse_strace_line(std::string_view line) {
  // Optional "[pid N]" or "N" prefix, then name(first_arg, ...) = result.
  static const std::regex pattern(
      R"(^\s*(?:\[pid\s+(\d+)\]|(\d+))?\s*([a-z_][a-z0-9_]*)\(([^,)]*)[^=]*=\s*(-?\d+|\?))");
  std::cmatch m;
  const std::string text(line);
  if (!std::regex_search(text.c_str(), m, pattern))
    return std::nullopt;
  event e;
  if (m[1].matched)
    e.bindings.emplace("pid", m[1].str());
  else if (m[2].matched)
    e.bindings.emplace("pid", m[2].str());
  std::string arg = m[4].str();
  while (!arg.empty() && arg.back() == ' ')
    arg.pop_back();
  if (!arg.empty())
    e.bindings.emplace(m[3].str(), arg);
  else
    e.flags.insert(m[3].str());
  const auto result = m[5].str();
  if (!result.empty() && result.front() == '-')
    e.flags.insert("failed");
  return e;
}

trace ingest_strace(std::istream& in, std::shared_ptr<symbol_table> symbols) {
  trace out(std::move(symbols));
  std::string line;
  while (std::getline(in, line))
    if (auto e = parse_strace_line(line))
      out.push_back(*e);
  return out;
}

} // namespace ltl4c
