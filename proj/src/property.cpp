#include "ltl4c/error.hpp"
#include "ltl4c/property.hpp"

#include <algorithm>

namespace ltl4c {

parse_error::parse_error(parse_error_kind kind, std::size_t line, std::size_t column,
                         const std::string& message)
    : error(std::to_string(line) + ":" + std::to_string(column) + ": " + to_string(kind) +
            ": " + message),
      kind_(kind), line_(line), column_(column), detail_(message) {}

const char* to_string(parse_error_kind kind) noexcept {
  switch (kind) {
  case parse_error_kind::syntax:
    return "syntax error";
  case parse_error_kind::non_canonical:
    return "non-canonical formula";
  case parse_error_kind::unbound_variable:
    return "unbound variable";
  case parse_error_kind::constraint_range:
    return "constraint out of range";
  }
  return "error";
}

ingest_error::ingest_error(std::size_t line, const std::string& message)
    : error("line " + std::to_string(line) + ": " + message), line_(line) {}

const char* to_string(comparison cmp) noexcept {
  switch (cmp) {
  case comparison::less:
    return "<";
  case comparison::less_equal:
    return "<=";
  case comparison::greater:
    return ">";
  case comparison::greater_equal:
    return ">=";
  case comparison::equal:
    return "=";
  }
  return "?";
}

bool holds(std::strong_ordering order, comparison cmp) noexcept {
  switch (cmp) {
  case comparison::less:
    return order < 0;
  case comparison::less_equal:
    return order <= 0;
  case comparison::greater:
    return order > 0;
  case comparison::greater_equal:
    return order >= 0;
  case comparison::equal:
    return order == 0;
  }
  return false;
}

formula::formula(kind k, std::string name, std::vector<std::string> args, ptr lhs, ptr rhs)
    : kind_(k), name_(std::move(name)), args_(std::move(args)), lhs_(std::move(lhs)),
      rhs_(std::move(rhs)) {}

formula::ptr formula::truth() {
  static const ptr instance{new formula(kind::truth, {}, {}, nullptr, nullptr)};
  return instance;
}

formula::ptr formula::predicate(std::string name, std::vector<std::string> args) {
  return ptr{new formula(kind::predicate, std::move(name), std::move(args), nullptr, nullptr)};
}

formula::ptr formula::negation(ptr operand) {
  return ptr{new formula(kind::negation, {}, {}, std::move(operand), nullptr)};
}

formula::ptr formula::conjunction(ptr lhs, ptr rhs) {
  return ptr{new formula(kind::conjunction, {}, {}, std::move(lhs), std::move(rhs))};
}

formula::ptr formula::next(ptr operand) {
  return ptr{new formula(kind::next, {}, {}, std::move(operand), nullptr)};
}

formula::ptr formula::until(ptr lhs, ptr rhs) {
  return ptr{new formula(kind::until, {}, {}, std::move(lhs), std::move(rhs))};
}

formula::ptr formula::falsity() { return negation(truth()); }

formula::ptr formula::disjunction(ptr lhs, ptr rhs) {
  return negation(conjunction(negation(std::move(lhs)), negation(std::move(rhs))));
}

formula::ptr formula::implication(ptr lhs, ptr rhs) {
  return negation(conjunction(std::move(lhs), negation(std::move(rhs))));
}

formula::ptr formula::eventually(ptr operand) { return until(truth(), std::move(operand)); }

formula::ptr formula::globally(ptr operand) {
  return negation(eventually(negation(std::move(operand))));
}

std::size_t formula::depth() const noexcept {
  std::size_t d = 0;
  if (lhs_)
    d = std::max(d, lhs_->depth());
  if (rhs_)
    d = std::max(d, rhs_->depth());
  return d + 1;
}

bool operator==(const formula& a, const formula& b) {
  if (&a == &b)
    return true;
  return a.kind_ == b.kind_ && a.name_ == b.name_ && a.args_ == b.args_ &&
         equal(a.lhs_, b.lhs_) && equal(a.rhs_, b.rhs_);
}

bool equal(const formula::ptr& a, const formula::ptr& b) {
  if (!a || !b)
    return a == b;
  return *a == *b;
}

std::vector<std::string> property::guard_keys() const {
  std::vector<std::string> keys;
  keys.reserve(prefix.size());
  for (const auto& q : prefix)
    keys.push_back(q.guard);
  return keys;
}

int property::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i].variable == name)
      return static_cast<int>(i);
  return -1;
}

bool operator==(const property& a, const property& b) {
  return a.prefix == b.prefix && equal(a.body, b.body);
}

} // namespace ltl4c
