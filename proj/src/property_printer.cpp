#include "ltl4c/property.hpp"

namespace ltl4c {
namespace {

using kind = formula::kind;

bool is(const formula::ptr& f, kind k) { return f && f->type() == k; }

bool is_truth(const formula::ptr& f) { return is(f, kind::truth); }

// Binary nodes get parentheses when they appear as operands.
bool prints_binary(const formula::ptr& f) {
  switch (f->type()) {
  case kind::conjunction:
    return true;
  case kind::until:
    return !is_truth(f->lhs()); // F x prints as a unary
  case kind::negation: {
    const auto& op = f->operand();
    if (is(op, kind::conjunction))
      return true; // || and ->
    return false;
  }
  default:
    return false;
  }
}

void print(const formula::ptr& f, std::string& out);

void print_operand(const formula::ptr& f, std::string& out) {
  if (prints_binary(f)) {
    out += '(';
    print(f, out);
    out += ')';
  } else {
    print(f, out);
  }
}

void print(const formula::ptr& f, std::string& out) {
  switch (f->type()) {
  case kind::truth:
    out += "true";
    return;
  case kind::predicate:
    out += f->name();
    if (!f->args().empty()) {
      out += '(';
      for (std::size_t i = 0; i < f->args().size(); ++i) {
        if (i)
          out += ", ";
        out += f->args()[i];
      }
      out += ')';
    }
    return;
  case kind::negation: {
    const auto& op = f->operand();
    if (is_truth(op)) {
      out += "false";
      return;
    }
    // G x == !(true U !x)
    if (is(op, kind::until) && is_truth(op->lhs()) && is(op->rhs(), kind::negation)) {
      out += "G ";
      print_operand(op->rhs()->operand(), out);
      return;
    }
    if (is(op, kind::conjunction)) {
      const auto& l = op->lhs();
      const auto& r = op->rhs();
      if (is(r, kind::negation)) {
        if (is(l, kind::negation)) {
          print_operand(l->operand(), out);
          out += " || ";
        } else {
          print_operand(l, out);
          out += " -> ";
        }
        print_operand(r->operand(), out);
        return;
      }
    }
    out += '!';
    print_operand(op, out);
    return;
  }
  case kind::conjunction:
    print_operand(f->lhs(), out);
    out += " && ";
    print_operand(f->rhs(), out);
    return;
  case kind::next:
    out += "X ";
    print_operand(f->operand(), out);
    return;
  case kind::until:
    if (is_truth(f->lhs())) {
      out += "F ";
      print_operand(f->rhs(), out);
      return;
    }
    print_operand(f->lhs(), out);
    out += " U ";
    print_operand(f->rhs(), out);
    return;
  }
}

} // namespace

std::string pretty_print(const formula::ptr& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string pretty_print(const quantifier& q) {
  std::string out = q.kind == quantifier_kind::percentage ? "forall" : "exists";
  out += '[';
  out += to_string(q.cmp);
  out += q.constant.to_string();
  out += "] ";
  out += q.variable;
  out += " : ";
  out += q.guard;
  out += '(';
  out += q.variable;
  out += ')';
  return out;
}

std::string pretty_print(const property& p) {
  std::string out;
  for (const auto& q : p.prefix) {
    out += pretty_print(q);
    out += " => ";
  }
  out += pretty_print(p.body);
  return out;
}

} // namespace ltl4c
