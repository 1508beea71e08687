#pragma once

// Random formulas, words, properties and traces for property-based tests.

#include <random>
#include <string>
#include <vector>

#include "ltl4c/monitor.hpp"

namespace oracle {

class random_source {
public:
  explicit random_source(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }
  template <class T> const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

  /// Body over the given atoms, using every connective including the
  /// derived ones.
  ltl4c::formula::ptr body(const std::vector<ltl4c::formula::ptr>& atoms, std::size_t depth) {
    using ltl4c::formula;
    if (depth == 0 || chance(0.25)) {
      if (chance(0.08))
        return chance(0.5) ? formula::truth() : formula::falsity();
      return pick(atoms);
    }
    auto sub = [&] { return body(atoms, depth - 1); };
    switch (below(9)) {
    case 0: return formula::negation(sub());
    case 1: return formula::conjunction(sub(), sub());
    case 2: return formula::disjunction(sub(), sub());
    case 3: return formula::implication(sub(), sub());
    case 4: return formula::next(sub());
    case 5: return formula::until(sub(), sub());
    case 6: return formula::eventually(sub());
    case 7: return formula::globally(sub());
    default: return formula::until(sub(), sub());
    }
  }

  /// Propositional atoms a, b, c, ... for monitor-level tests.
  static std::vector<ltl4c::formula::ptr> letters_atoms(std::size_t k) {
    std::vector<ltl4c::formula::ptr> out;
    for (std::size_t i = 0; i < k; ++i)
      out.push_back(ltl4c::formula::predicate(std::string(1, static_cast<char>('a' + i))));
    return out;
  }

  std::vector<ltl4c::letter> word(std::size_t atoms, std::size_t max_len) {
    std::vector<ltl4c::letter> w(below(max_len + 1));
    for (auto& x : w)
      x = static_cast<ltl4c::letter>(below(std::size_t{1} << atoms));
    return w;
  }

  /// Property with up to `max_quantifiers` quantifiers over guards k0, k1
  /// and a body over p(x0), q(x1), s(x0,x1) and the flag r.
  ltl4c::property property(std::size_t max_quantifiers, std::size_t depth) {
    using namespace ltl4c;
    struct property out;
    const std::size_t n = below(max_quantifiers + 1);
    for (std::size_t i = 0; i < n; ++i) {
      quantifier q;
      q.kind = chance(0.5) ? quantifier_kind::percentage : quantifier_kind::instance;
      q.cmp = static_cast<comparison>(below(5));
      if (q.kind == quantifier_kind::percentage)
        q.constant = pick(std::vector<rational>{rational(0), rational(1, 3), rational(1, 2),
                                                rational(2, 3), rational(1), rational(95, 100)});
      else
        q.constant = rational(static_cast<std::int64_t>(below(4)));
      q.variable = "x" + std::to_string(i);
      q.guard = "k" + std::to_string(i);
      out.prefix.push_back(q);
    }
    std::vector<formula::ptr> atoms{formula::predicate("r")};
    if (n >= 1)
      atoms.push_back(formula::predicate("p", {"x0"}));
    if (n >= 2) {
      atoms.push_back(formula::predicate("q", {"x1"}));
      atoms.push_back(formula::predicate("s", {"x0", "x1"}));
    }
    out.body = body(atoms, depth);
    return out;
  }

  /// Events over the vocabulary of property(): guards with two values each,
  /// predicates bound to guard-like values, and the flag r.
  std::vector<ltl4c::event> events(std::size_t max_len) {
    std::vector<ltl4c::event> out(below(max_len + 1));
    const std::vector<std::string> v0{"a", "b"}, v1{"1", "2"};
    for (auto& e : out) {
      if (chance(0.85))
        e.bindings["k0"] = pick(v0);
      if (chance(0.85))
        e.bindings["k1"] = pick(v1);
      if (chance(0.6))
        e.bindings["p"] = pick(v0);
      if (chance(0.6))
        e.bindings["q"] = pick(v1);
      if (chance(0.4))
        e.bindings["s"] = pick(v0) + "," + pick(v1);
      if (chance(0.5))
        e.flags.insert("r");
    }
    return out;
  }

private:
  std::mt19937_64 rng_;
};

} // namespace oracle
