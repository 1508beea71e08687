#pragma once

// Brute-force evaluator for properties with counting quantifiers. Each call
// recomputes the value vectors, the child sets, the per-instance trace
// slices, the instance counts and the constraint checks from scratch over
// plain string events. Leaf verdicts replay the shared monitor on letters
// computed here; the monitor itself is checked separately.

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ltl4c/monitor.hpp"

namespace oracle {

using ltl4c::verdict6;

struct node_result {
  std::vector<std::string> path;
  verdict6 b;
  bool settled;
  std::array<std::uint64_t, 6> v{};
};

struct counting_result {
  verdict6 verdict;
  std::vector<node_result> nodes; // quantifier nodes, ordered by path
};

class counting_evaluator {
public:
  counting_evaluator(const ltl4c::property& p, const ltl4c::monitor_fsm& fsm,
                     const std::vector<ltl4c::event>& u)
      : p_(p), fsm_(fsm), u_(u) {
    for (const auto& e : u_) {
      std::vector<std::string> d;
      for (const auto& q : p_.prefix) {
        auto it = e.bindings.find(q.guard);
        if (it == e.bindings.end())
          break;
        d.push_back(it->second);
      }
      if (d.size() == p_.prefix.size())
        vectors_.insert(d);
    }
  }

  counting_result run() {
    counting_result r;
    r.verdict = eval({}, r.nodes).first;
    return r;
  }

private:
  // Slice of the trace for a full vector.
  std::vector<ltl4c::letter> letters_for(const std::vector<std::string>& d) const {
    std::vector<ltl4c::letter> out;
    for (const auto& e : u_) {
      bool member = true;
      for (std::size_t i = 0; i < d.size(); ++i) {
        auto it = e.bindings.find(p_.prefix[i].guard);
        if (it == e.bindings.end() || it->second != d[i])
          member = false;
      }
      if (!member)
        continue;
      ltl4c::letter x = 0;
      const auto& atoms = fsm_.atoms();
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        bool holds;
        if (atoms[a].args.empty()) {
          holds = e.flags.count(atoms[a].name) || e.bindings.count(atoms[a].name);
        } else {
          std::string expected;
          for (std::size_t k = 0; k < atoms[a].args.size(); ++k) {
            if (k)
              expected += ',';
            expected += d[static_cast<std::size_t>(p_.variable_index(atoms[a].args[k]))];
          }
          auto it = e.bindings.find(atoms[a].name);
          holds = it != e.bindings.end() && it->second == expected;
        }
        if (holds)
          x |= ltl4c::letter{1} << a;
      }
      out.push_back(x);
    }
    return out;
  }

  // [count ~ c] or [count ~ c * total], in exact integer arithmetic.
  bool satisfied(const ltl4c::quantifier& q, std::uint64_t count, std::uint64_t total) const {
    const __int128 lhs = static_cast<__int128>(count) * q.constant.den();
    const __int128 rhs = static_cast<__int128>(q.constant.num()) *
                         (q.kind == ltl4c::quantifier_kind::percentage ? total : 1);
    switch (q.cmp) {
    case ltl4c::comparison::less: return lhs < rhs;
    case ltl4c::comparison::less_equal: return lhs <= rhs;
    case ltl4c::comparison::greater: return lhs > rhs;
    case ltl4c::comparison::greater_equal: return lhs >= rhs;
    case ltl4c::comparison::equal: return lhs == rhs;
    }
    return false;
  }

  std::pair<verdict6, bool> eval(const std::vector<std::string>& prefix,
                                 std::vector<node_result>& nodes) const {
    const std::size_t m = prefix.size();
    if (m == p_.prefix.size()) {
      const auto v = fsm_.evaluate(letters_for(prefix));
      return {ltl4c::to_verdict6(v), ltl4c::is_permanent(v)};
    }
    std::set<std::string> children;
    for (const auto& d : vectors_)
      if (std::equal(prefix.begin(), prefix.end(), d.begin()))
        children.insert(d[m]);

    const auto slot = nodes.size();
    nodes.push_back({prefix, verdict6::bottom, false, {}});
    std::array<std::uint64_t, 6> v{};
    std::uint64_t n = 0, perm_true = 0, perm_false = 0;
    for (const auto& c : children) {
      auto next = prefix;
      next.push_back(c);
      auto [b, settled] = eval(next, nodes);
      ++v[static_cast<std::size_t>(b)];
      ++n;
      perm_true += settled && b == verdict6::top;
      perm_false += settled && b == verdict6::bottom;
    }
    const auto& q = p_.prefix[m];
    auto count = [&](std::initializer_list<verdict6> set) {
      std::uint64_t c = 0;
      for (auto b : set)
        c += v[static_cast<std::size_t>(b)];
      return c;
    };

    verdict6 b;
    bool settled = false;
    using ltl4c::comparison;
    const bool instance = q.kind == ltl4c::quantifier_kind::instance;
    const bool upper = q.cmp == comparison::less || q.cmp == comparison::less_equal ||
                       q.cmp == comparison::equal;
    const __int128 c_den = q.constant.den(), c_num = q.constant.num();
    auto above = [&](std::uint64_t k) { return static_cast<__int128>(k) * c_den > c_num; };
    auto at_least = [&](std::uint64_t k) { return static_cast<__int128>(k) * c_den >= c_num; };

    if (instance && q.cmp == comparison::greater && above(perm_true)) {
      b = verdict6::top, settled = true;
    } else if (instance && q.cmp == comparison::greater_equal && at_least(perm_true)) {
      b = verdict6::top, settled = true;
    } else if (instance && (q.cmp == comparison::equal || q.cmp == comparison::less_equal) &&
               above(perm_true)) {
      b = verdict6::bottom, settled = true;
    } else if (instance && q.cmp == comparison::less && at_least(perm_true)) {
      b = verdict6::bottom, settled = true;
    } else if (!instance && q.constant == ltl4c::rational(1) &&
               (q.cmp == comparison::equal || q.cmp == comparison::greater_equal) &&
               perm_false > 0) {
      b = verdict6::bottom, settled = true;
    } else if (instance && upper && n > 0 && perm_false == n && satisfied(q, 0, n)) {
      b = verdict6::top;
    } else if (n == 0) {
      b = satisfied(q, 0, 0) ? verdict6::presumably_true : verdict6::presumably_false;
    } else if (satisfied(q, count({verdict6::top, verdict6::currently_true}), n)) {
      b = verdict6::currently_true;
    } else if (!satisfied(q,
                          count({verdict6::currently_true, verdict6::top,
                                 verdict6::presumably_true, verdict6::presumably_false}),
                          n)) {
      b = verdict6::currently_false;
    } else if (satisfied(q, count({verdict6::top, verdict6::currently_true,
                                   verdict6::presumably_true}),
                         n)) {
      b = verdict6::presumably_true;
    } else {
      b = verdict6::presumably_false;
    }
    nodes[slot].b = b;
    nodes[slot].settled = settled;
    nodes[slot].v = v;
    return {b, settled};
  }

  const ltl4c::property& p_;
  const ltl4c::monitor_fsm& fsm_;
  const std::vector<ltl4c::event>& u_;
  std::set<std::vector<std::string>> vectors_;
};

inline counting_result evaluate(const ltl4c::property& p, const ltl4c::monitor_fsm& fsm,
                                const std::vector<ltl4c::event>& u) {
  return counting_evaluator(p, fsm, u).run();
}

} // namespace oracle
