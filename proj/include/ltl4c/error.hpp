#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltl4c {

class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class parse_error_kind {
  syntax,
  non_canonical,
  unbound_variable,
  constraint_range,
};

/// Property text rejected by the parser. Line and column are 1-based.
class parse_error : public error {
public:
  parse_error(parse_error_kind kind, std::size_t line, std::size_t column,
              const std::string& message);

  parse_error_kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  parse_error_kind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

const char* to_string(parse_error_kind kind) noexcept;

/// A trace record that could not be turned into an event.
class ingest_error : public error {
public:
  ingest_error(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Monitor synthesis ran past its state or transition budget.
class synthesis_budget_exceeded : public error {
public:
  using error::error;
};

} // namespace ltl4c
