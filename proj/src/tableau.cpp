#include "automata.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "ltl4c/error.hpp"

namespace ltl4c::detail {

std::uint32_t formula_pool::make(op kind, std::uint32_t a, std::uint32_t b) {
  // Light simplification keeps the state spaces small.
  if (kind == op::conj || kind == op::disj) {
    const op unit = kind == op::conj ? op::tt : op::ff;
    const op zero = kind == op::conj ? op::ff : op::tt;
    if (nodes_[a].kind == zero || nodes_[b].kind == unit)
      return a;
    if (nodes_[b].kind == zero || nodes_[a].kind == unit)
      return b;
    if (a == b)
      return a;
    if (a > b)
      std::swap(a, b);
  }
  auto key = std::tuple(kind, a, b);
  if (auto it = index_.find(key); it != index_.end())
    return it->second;
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({kind, a, b});
  index_.emplace(key, id);
  return id;
}

std::uint32_t formula_pool::nnf(const formula::ptr& f, bool negate, std::span<const atom> atoms,
                                bool finite) {
  switch (f->type()) {
  case formula::kind::truth:
    return make(negate ? op::ff : op::tt);
  case formula::kind::predicate:
    return make(negate ? op::neg_lit : op::lit,
                static_cast<std::uint32_t>(atom_index(atoms, *f)));
  case formula::kind::negation:
    return nnf(f->operand(), !negate, atoms, finite);
  case formula::kind::conjunction: {
    auto l = nnf(f->lhs(), negate, atoms, finite);
    auto r = nnf(f->rhs(), negate, atoms, finite);
    return make(negate ? op::disj : op::conj, l, r);
  }
  case formula::kind::next:
    return make(negate && finite ? op::weak_next : op::next,
                nnf(f->operand(), negate, atoms, finite));
  case formula::kind::until: {
    auto l = nnf(f->lhs(), negate, atoms, finite);
    auto r = nnf(f->rhs(), negate, atoms, finite);
    return make(negate ? op::release : op::until, l, r);
  }
  }
  return make(op::ff);
}

namespace {

struct cover {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  std::vector<std::uint32_t> next;
  std::uint64_t pending = 0; // untils postponed in this cover
};

class expander {
public:
  expander(const formula_pool& pool, const std::map<std::uint32_t, int>& until_bit)
      : pool_(pool), until_bit_(until_bit) {}

  std::vector<cover> expand(const std::vector<std::uint32_t>& obligations) {
    covers_.clear();
    std::vector<std::uint32_t> todo(obligations.rbegin(), obligations.rend());
    branch(std::move(todo), {}, {});
    return std::move(covers_);
  }

private:
  void branch(std::vector<std::uint32_t> todo, std::vector<std::uint32_t> done, cover c) {
    while (!todo.empty()) {
      const auto id = todo.back();
      todo.pop_back();
      if (std::find(done.begin(), done.end(), id) != done.end())
        continue;
      done.push_back(id);
      const node& n = pool_[id];
      switch (n.kind) {
      case op::tt:
        break;
      case op::ff:
        return;
      case op::lit:
        if (c.neg >> n.a & 1)
          return;
        c.pos |= std::uint64_t{1} << n.a;
        break;
      case op::neg_lit:
        if (c.pos >> n.a & 1)
          return;
        c.neg |= std::uint64_t{1} << n.a;
        break;
      case op::conj:
        todo.push_back(n.b);
        todo.push_back(n.a);
        break;
      case op::disj: {
        auto alt = todo;
        alt.push_back(n.b);
        branch(std::move(alt), done, c);
        todo.push_back(n.a);
        break;
      }
      case op::next:
      case op::weak_next:
        c.next.push_back(n.a);
        break;
      case op::until: {
        // Either fulfil now, or hold the left side and postpone.
        auto alt = todo;
        alt.push_back(n.b);
        branch(std::move(alt), done, c);
        todo.push_back(n.a);
        c.next.push_back(id);
        c.pending |= std::uint64_t{1} << until_bit_.at(id);
        break;
      }
      case op::release: {
        auto alt = todo;
        alt.push_back(n.a);
        alt.push_back(n.b);
        branch(std::move(alt), done, c);
        todo.push_back(n.b);
        c.next.push_back(id);
        break;
      }
      }
    }
    std::sort(c.next.begin(), c.next.end());
    c.next.erase(std::unique(c.next.begin(), c.next.end()), c.next.end());
    covers_.push_back(std::move(c));
  }

  const formula_pool& pool_;
  const std::map<std::uint32_t, int>& until_bit_;
  std::vector<cover> covers_;
};

void mark_nonempty(tgba& a) {
  const auto n = static_cast<std::uint32_t>(a.edges.size());
  // Iterative Tarjan.
  std::vector<std::int64_t> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack, component(n, 0);
  std::uint32_t next_index = 0, components = 0;
  struct frame {
    std::uint32_t v;
    std::size_t edge;
  };
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] >= 0)
      continue;
    std::vector<frame> calls{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      auto& [v, e] = calls.back();
      if (e < a.edges[v].size()) {
        const auto w = a.edges[v][e++].target;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = components;
        } while (w != v);
        ++components;
      }
      const auto done = v;
      calls.pop_back();
      if (!calls.empty())
        low[calls.back().v] = std::min(low[calls.back().v], low[done]);
    }
  }

  std::vector<std::uint64_t> acc(components, 0);
  std::vector<bool> cyclic(components, false);
  for (std::uint32_t v = 0; v < n; ++v)
    for (const auto& e : a.edges[v])
      if (component[e.target] == component[v]) {
        cyclic[component[v]] = true;
        acc[component[v]] |= e.accepting;
      }

  // Tarjan numbers components in reverse topological order, so successors
  // of a component always carry smaller numbers.
  std::vector<std::vector<std::uint32_t>> members(components);
  for (std::uint32_t v = 0; v < n; ++v)
    members[component[v]].push_back(v);
  std::vector<bool> good(components, false);
  for (std::uint32_t c = 0; c < components; ++c) {
    bool ok = cyclic[c] && (acc[c] & a.all_accepting) == a.all_accepting;
    for (auto v : members[c])
      for (const auto& e : a.edges[v])
        if (component[e.target] != c && good[component[e.target]])
          ok = true;
    good[c] = ok;
  }
  a.nonempty.assign(n, false);
  for (std::uint32_t v = 0; v < n; ++v)
    a.nonempty[v] = good[component[v]];
}

} // namespace

tgba build_tgba(const formula_pool& pool, std::uint32_t root, std::size_t max_states) {
  std::map<std::uint32_t, int> until_bit;
  for (std::uint32_t id = 0; id < pool.size(); ++id)
    if (pool[id].kind == op::until) {
      if (until_bit.size() == 64)
        throw synthesis_budget_exceeded("more than 64 until operators");
      const int bit = static_cast<int>(until_bit.size());
      until_bit.emplace(id, bit);
    }

  tgba a;
  a.all_accepting = until_bit.size() == 64 ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << until_bit.size()) - 1;
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  std::vector<std::vector<std::uint32_t>> states;
  auto intern = [&](std::vector<std::uint32_t> s) {
    auto [it, fresh] = ids.emplace(s, static_cast<std::uint32_t>(states.size()));
    if (fresh) {
      if (states.size() >= max_states)
        throw synthesis_budget_exceeded("tableau exceeds " + std::to_string(max_states) +
                                        " states");
      states.push_back(std::move(s));
      a.edges.emplace_back();
    }
    return it->second;
  };
  a.initial = intern({root});

  expander ex(pool, until_bit);
  for (std::uint32_t q = 0; q < states.size(); ++q) {
    for (auto& c : ex.expand(states[q])) {
      const auto target = intern(std::move(c.next));
      a.edges[q].push_back({c.pos, c.neg, target, a.all_accepting & ~c.pending});
    }
  }
  mark_nonempty(a);
  return a;
}

} // namespace ltl4c::detail
