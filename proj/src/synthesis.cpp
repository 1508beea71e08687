#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "automata.hpp"
#include "ltl4c/error.hpp"

namespace ltl4c {
namespace {

using detail::formula_pool;
using detail::op;
using detail::tgba;

// ---------------------------------------------------------------- residuals
//
// The finite-trace value of the unread suffix is tracked as a positive
// boolean combination of terms over pool formulas:
//   strong(g): the suffix is nonempty and satisfies g
//   weak(g):   the suffix is empty or satisfies g
//   now(g):    the suffix satisfies g (only used for the start state)
// Positive DNF with absorption keeps the representation canonical enough
// for the state space to stay finite.

enum term_kind : std::uint32_t { strong = 0, weak = 1, now = 2 };

constexpr std::uint32_t term(term_kind k, std::uint32_t f) { return f * 3 + k; }
constexpr term_kind kind_of(std::uint32_t t) { return static_cast<term_kind>(t % 3); }
constexpr std::uint32_t formula_of(std::uint32_t t) { return t / 3; }

using cube = std::vector<std::uint32_t>; // sorted terms
using dnf = std::vector<cube>;           // sorted, absorbed

const dnf dnf_true{cube{}};
const dnf dnf_false{};

void absorb(dnf& d) {
  std::sort(d.begin(), d.end(), [](const cube& a, const cube& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  d.erase(std::unique(d.begin(), d.end()), d.end());
  dnf kept;
  for (auto& c : d) {
    bool subsumed = false;
    for (const auto& k : kept)
      if (std::includes(c.begin(), c.end(), k.begin(), k.end())) {
        subsumed = true;
        break;
      }
    if (!subsumed)
      kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end());
  d = std::move(kept);
}

dnf dnf_or(const dnf& a, const dnf& b) {
  dnf out = a;
  out.insert(out.end(), b.begin(), b.end());
  absorb(out);
  return out;
}

dnf dnf_and(const dnf& a, const dnf& b) {
  dnf out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) {
      cube c;
      std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(c));
      out.push_back(std::move(c));
    }
  absorb(out);
  return out;
}

class progression {
public:
  explicit progression(const formula_pool& pool) : pool_(pool) {}

  bool empty_value(std::uint32_t f) const {
    const auto& n = pool_[f];
    switch (n.kind) {
    case op::tt:
    case op::neg_lit:
    case op::weak_next:
    case op::release:
      return true;
    case op::ff:
    case op::lit:
    case op::next:
    case op::until:
      return false;
    case op::conj:
      return empty_value(n.a) && empty_value(n.b);
    case op::disj:
      return empty_value(n.a) || empty_value(n.b);
    }
    return false;
  }

  bool empty_value(const dnf& d) const {
    for (const auto& c : d) {
      bool all = true;
      for (auto t : c) {
        const bool v = kind_of(t) == weak || (kind_of(t) == now && empty_value(formula_of(t)));
        if (!v) {
          all = false;
          break;
        }
      }
      if (all)
        return true;
    }
    return false;
  }

  // Residual of formula f after reading one letter.
  const dnf& step(std::uint32_t f, letter a) {
    const auto key = (std::uint64_t{f} << 32) | a;
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    const auto& n = pool_[f];
    dnf out;
    switch (n.kind) {
    case op::tt:
      out = dnf_true;
      break;
    case op::ff:
      out = dnf_false;
      break;
    case op::lit:
      out = (a >> n.a & 1u) ? dnf_true : dnf_false;
      break;
    case op::neg_lit:
      out = (a >> n.a & 1u) ? dnf_false : dnf_true;
      break;
    case op::conj:
      out = dnf_and(step(n.a, a), step(n.b, a));
      break;
    case op::disj:
      out = dnf_or(step(n.a, a), step(n.b, a));
      break;
    case op::next:
      out = dnf{cube{term(strong, n.a)}};
      break;
    case op::weak_next:
      out = dnf{cube{term(weak, n.a)}};
      break;
    case op::until:
      out = dnf_or(step(n.b, a), dnf_and(step(n.a, a), dnf{cube{term(strong, f)}}));
      break;
    case op::release:
      out = dnf_and(step(n.b, a), dnf_or(step(n.a, a), dnf{cube{term(weak, f)}}));
      break;
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  dnf step(const dnf& d, letter a) {
    dnf out;
    for (const auto& c : d) {
      dnf conj = dnf_true;
      for (auto t : c) {
        conj = dnf_and(conj, step(formula_of(t), a));
        if (conj.empty())
          break;
      }
      out.insert(out.end(), conj.begin(), conj.end());
    }
    absorb(out);
    return out;
  }

private:
  const formula_pool& pool_;
  std::unordered_map<std::uint64_t, dnf> memo_;
};

// ------------------------------------------------------------ subset side

// Sets of automaton states from which some continuation is accepted.
class subset_tracker {
public:
  explicit subset_tracker(tgba a) : a_(std::move(a)) {
    std::vector<std::uint32_t> start;
    if (a_.nonempty[a_.initial])
      start.push_back(a_.initial);
    initial_ = intern(std::move(start));
  }

  std::uint32_t initial() const { return initial_; }
  bool empty(std::uint32_t s) const { return sets_[s].empty(); }

  std::uint32_t step(std::uint32_t s, letter x) {
    const auto key = (std::uint64_t{s} << 32) | x;
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    std::vector<std::uint32_t> next;
    for (auto q : sets_[s])
      for (const auto& e : a_.edges[q])
        if ((x & e.pos) == e.pos && (x & e.neg) == 0 && a_.nonempty[e.target])
          next.push_back(e.target);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    const auto id = intern(std::move(next));
    memo_.emplace(key, id);
    return id;
  }

private:
  std::uint32_t intern(std::vector<std::uint32_t> set) {
    auto [it, fresh] = ids_.emplace(set, static_cast<std::uint32_t>(sets_.size()));
    if (fresh)
      sets_.push_back(std::move(set));
    return it->second;
  }

  tgba a_;
  std::uint32_t initial_ = 0;
  std::vector<std::vector<std::uint32_t>> sets_;
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids_;
  std::unordered_map<std::uint64_t, std::uint32_t> memo_;
};

tgba automaton_for(const formula::ptr& body, bool negate, std::span<const atom> atoms,
                   std::size_t max_states) {
  formula_pool pool;
  const auto root = pool.nnf(body, negate, atoms, false);
  return detail::build_tgba(pool, root, max_states);
}

// ---------------------------------------------------------- minimization

struct machine {
  std::vector<monitor_fsm::state> delta;
  std::vector<verdict4> labels;
  monitor_fsm::state initial = 0;
};

// Renumbers states in breadth-first order from the initial state so equal
// machines come out identical regardless of construction order.
machine canonical(const machine& m, std::size_t letters) {
  const auto n = m.labels.size();
  std::vector<std::int64_t> order(n, -1);
  std::vector<monitor_fsm::state> queue{m.initial};
  order[m.initial] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t x = 0; x < letters; ++x) {
      const auto t = m.delta[queue[i] * letters + x];
      if (order[t] < 0) {
        order[t] = static_cast<std::int64_t>(queue.size());
        queue.push_back(t);
      }
    }
  machine out;
  out.initial = 0;
  out.labels.resize(queue.size());
  out.delta.resize(queue.size() * letters);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    out.labels[i] = m.labels[queue[i]];
    for (std::size_t x = 0; x < letters; ++x)
      out.delta[i * letters + x] =
          static_cast<monitor_fsm::state>(order[m.delta[queue[i] * letters + x]]);
  }
  return out;
}

machine minimize(const machine& m, std::size_t letters) {
  const auto n = m.labels.size();
  std::vector<std::uint32_t> cls(n);
  for (std::size_t q = 0; q < n; ++q)
    cls[q] = static_cast<std::uint32_t>(m.labels[q]);
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n);
    std::vector<std::uint32_t> sig(letters + 1);
    for (std::size_t q = 0; q < n; ++q) {
      sig[0] = cls[q];
      for (std::size_t x = 0; x < letters; ++x)
        sig[x + 1] = cls[m.delta[q * letters + x]];
      next[q] = ids.emplace(sig, static_cast<std::uint32_t>(ids.size())).first->second;
    }
    cls = std::move(next);
    if (ids.size() == classes)
      break;
    classes = ids.size();
  }
  machine out;
  out.labels.resize(classes);
  out.delta.resize(classes * letters);
  for (std::size_t q = 0; q < n; ++q) {
    out.labels[cls[q]] = m.labels[q];
    for (std::size_t x = 0; x < letters; ++x)
      out.delta[cls[q] * letters + x] = cls[m.delta[q * letters + x]];
  }
  out.initial = cls[m.initial];
  return out;
}

} // namespace

monitor_fsm synthesize_monitor(const formula::ptr& body, const synthesis_options& options) {
  auto atoms = collect_atoms(body);
  if (atoms.size() > options.max_atoms || atoms.size() >= 32)
    throw synthesis_budget_exceeded("body has " + std::to_string(atoms.size()) +
                                    " atoms; the limit is " +
                                    std::to_string(options.max_atoms));
  const std::size_t letters = std::size_t{1} << atoms.size();

  subset_tracker good(automaton_for(body, false, atoms, options.max_states));
  subset_tracker bad(automaton_for(body, true, atoms, options.max_states));

  formula_pool finite_pool;
  const auto root = finite_pool.nnf(body, false, atoms, true);
  progression prog(finite_pool);

  // Product of both subset constructions and the residual.
  std::vector<dnf> residuals;
  std::map<dnf, std::uint32_t> residual_ids;
  auto intern_residual = [&](dnf d) {
    auto [it, fresh] = residual_ids.emplace(d, static_cast<std::uint32_t>(residuals.size()));
    if (fresh)
      residuals.push_back(std::move(d));
    return it->second;
  };

  using key = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;
  std::map<key, monitor_fsm::state> ids;
  std::vector<key> states;
  auto intern_state = [&](key k) {
    auto [it, fresh] = ids.emplace(k, static_cast<monitor_fsm::state>(states.size()));
    if (fresh) {
      if (states.size() >= options.max_states)
        throw synthesis_budget_exceeded("monitor exceeds " + std::to_string(options.max_states) +
                                        " states");
      if ((states.size() + 1) * letters > (std::size_t{1} << 26))
        throw synthesis_budget_exceeded("monitor transition table too large");
      states.push_back(k);
    }
    return it->second;
  };

  intern_state({good.initial(), bad.initial(), intern_residual(dnf{cube{term(now, root)}})});
  std::vector<monitor_fsm::state> delta;
  for (std::size_t q = 0; q < states.size(); ++q) {
    const auto [g, b, r] = states[q];
    for (std::size_t x = 0; x < letters; ++x) {
      const auto a = static_cast<letter>(x);
      const auto next_r = intern_residual(prog.step(residuals[r], a));
      delta.push_back(intern_state({good.step(g, a), bad.step(b, a), next_r}));
    }
  }

  // Finite-trace value per state, and whether each value is reachable.
  const auto n = states.size();
  std::vector<bool> value(n);
  for (std::size_t q = 0; q < n; ++q)
    value[q] = prog.empty_value(residuals[std::get<2>(states[q])]);
  std::vector<std::vector<monitor_fsm::state>> preds(n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t x = 0; x < letters; ++x)
      preds[delta[q * letters + x]].push_back(static_cast<monitor_fsm::state>(q));
  auto can_reach = [&](bool wanted) {
    std::vector<bool> seen(n, false);
    std::deque<monitor_fsm::state> queue;
    for (std::size_t q = 0; q < n; ++q)
      if (value[q] == wanted) {
        seen[q] = true;
        queue.push_back(static_cast<monitor_fsm::state>(q));
      }
    while (!queue.empty()) {
      const auto q = queue.front();
      queue.pop_front();
      for (auto p : preds[q])
        if (!seen[p]) {
          seen[p] = true;
          queue.push_back(p);
        }
    }
    return seen;
  };
  const auto can_be_true = can_reach(true);
  const auto can_be_false = can_reach(false);

  machine m;
  m.delta = std::move(delta);
  m.labels.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    const auto [g, b, r] = states[q];
    verdict4 v = value[q] ? verdict4::presumably_true : verdict4::presumably_false;
    // Permanent only if no infinite and no finite continuation disagrees.
    if (bad.empty(b) && !can_be_false[q])
      v = verdict4::top;
    else if (good.empty(g) && !can_be_true[q])
      v = verdict4::bottom;
    m.labels[q] = v;
    if (is_permanent(v))
      for (std::size_t x = 0; x < letters; ++x)
        m.delta[q * letters + x] = static_cast<monitor_fsm::state>(q);
  }

  if (options.minimize)
    m = minimize(m, letters);
  m = canonical(m, letters);
  return monitor_fsm(std::move(atoms), std::move(m.delta), std::move(m.labels), m.initial);
}

} // namespace ltl4c
