#pragma once

// Direct transcription of finite-trace LTL semantics, written without any
// sharing with the production evaluator.

#include <span>

#include "ltl4c/monitor.hpp"

namespace oracle {

inline bool fltl_at(const ltl4c::formula& f, std::span<const ltl4c::atom> atoms,
                    std::span<const ltl4c::letter> w, std::size_t i) {
  using k = ltl4c::formula::kind;
  const std::size_t n = w.size();
  switch (f.type()) {
  case k::truth:
    return true;
  case k::predicate: {
    if (i >= n)
      return false;
    for (std::size_t a = 0; a < atoms.size(); ++a)
      if (atoms[a].name == f.name() && atoms[a].args == f.args())
        return (w[i] >> a) & 1u;
    return false;
  }
  case k::negation:
    return !fltl_at(*f.operand(), atoms, w, i);
  case k::conjunction:
    return fltl_at(*f.lhs(), atoms, w, i) && fltl_at(*f.rhs(), atoms, w, i);
  case k::next:
    return i + 1 < n && fltl_at(*f.operand(), atoms, w, i + 1);
  case k::until:
    for (std::size_t j = i; j < n; ++j) {
      if (fltl_at(*f.rhs(), atoms, w, j))
        return true;
      if (!fltl_at(*f.lhs(), atoms, w, j))
        return false;
    }
    return false;
  }
  return false;
}

inline bool fltl(const ltl4c::formula::ptr& f, std::span<const ltl4c::atom> atoms,
                 std::span<const ltl4c::letter> w) {
  return fltl_at(*f, atoms, w, 0);
}

} // namespace oracle
