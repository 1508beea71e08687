#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ltl4c/rational.hpp"

namespace ltl4c {

enum class quantifier_kind {
  percentage, // A: fraction of child instances
  instance,   // E: number of child instances
};

enum class comparison { less, less_equal, greater, greater_equal, equal };

const char* to_string(comparison cmp) noexcept;
bool holds(std::strong_ordering order, comparison cmp) noexcept;

struct quantifier {
  quantifier_kind kind = quantifier_kind::percentage;
  comparison cmp = comparison::equal;
  rational constant{1};
  std::string variable;
  std::string guard; // key of the guard predicate p(x)

  friend bool operator==(const quantifier&, const quantifier&) = default;
};

/// Quantifier-free body in canonical (desugared) form.
///
/// Only the core connectives are represented; F, G, ||, -> and false are
/// expanded by the parser. Nodes are immutable and freely shared.
class formula {
public:
  enum class kind { truth, predicate, negation, conjunction, next, until };
  using ptr = std::shared_ptr<const formula>;

  static ptr truth();
  static ptr predicate(std::string name, std::vector<std::string> args = {});
  static ptr negation(ptr operand);
  static ptr conjunction(ptr lhs, ptr rhs);
  static ptr next(ptr operand);
  static ptr until(ptr lhs, ptr rhs);

  // Derived forms, expanded on construction.
  static ptr falsity();
  static ptr disjunction(ptr lhs, ptr rhs);
  static ptr implication(ptr lhs, ptr rhs);
  static ptr eventually(ptr operand);
  static ptr globally(ptr operand);

  kind type() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& args() const noexcept { return args_; }
  const ptr& lhs() const noexcept { return lhs_; }
  const ptr& rhs() const noexcept { return rhs_; }
  /// Operand of a unary node.
  const ptr& operand() const noexcept { return lhs_; }

  std::size_t depth() const noexcept;

  friend bool operator==(const formula& a, const formula& b);

private:
  formula(kind k, std::string name, std::vector<std::string> args, ptr lhs, ptr rhs);

  kind kind_;
  std::string name_;
  std::vector<std::string> args_;
  ptr lhs_;
  ptr rhs_;
};

bool equal(const formula::ptr& a, const formula::ptr& b);

/// A counting-quantifier prefix followed by a quantifier-free body.
struct property {
  std::vector<quantifier> prefix; // index 0 is outermost
  formula::ptr body;

  /// Guard keys in quantifier order.
  std::vector<std::string> guard_keys() const;
  /// Position of a variable in the prefix, or -1.
  int variable_index(std::string_view name) const;

  friend bool operator==(const property& a, const property& b);
};

property parse_property(std::string_view text);
std::string pretty_print(const property& p);
std::string pretty_print(const formula::ptr& f);
std::string pretty_print(const quantifier& q);

} // namespace ltl4c
