#pragma once

// Internal machinery for monitor synthesis.

#include <cstdint>
#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "ltl4c/monitor.hpp"

namespace ltl4c::detail {

enum class op : std::uint8_t {
  tt,
  ff,
  lit,     // a = atom index
  neg_lit, // a = atom index
  conj,
  disj,
  next,    // strong next
  weak_next,
  until,
  release,
};

struct node {
  op kind;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  auto key() const { return std::tuple(kind, a, b); }
};

/// Hash-consed negation normal form formulas.
class formula_pool {
public:
  std::uint32_t make(op kind, std::uint32_t a = 0, std::uint32_t b = 0);
  const node& operator[](std::uint32_t id) const { return nodes_[id]; }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// NNF of `f` (or of its negation). With `finite` set, a negated X becomes
  /// a weak next so that the result keeps finite-trace meaning.
  std::uint32_t nnf(const formula::ptr& f, bool negate, std::span<const atom> atoms, bool finite);

private:
  std::vector<node> nodes_;
  std::map<std::tuple<op, std::uint32_t, std::uint32_t>, std::uint32_t> index_;
};

struct tgba_edge {
  std::uint64_t pos; // atoms that must hold
  std::uint64_t neg; // atoms that must not hold
  std::uint32_t target;
  std::uint64_t accepting; // bit j: until j is not left pending
};

/// Transition-based generalized Buchi automaton from the tableau expansion.
struct tgba {
  std::vector<std::vector<tgba_edge>> edges;
  std::uint64_t all_accepting = 0;
  std::uint32_t initial = 0;
  /// nonempty[q]: some infinite word is accepted from q.
  std::vector<bool> nonempty;
};

tgba build_tgba(const formula_pool& pool, std::uint32_t root, std::size_t max_states);

} // namespace ltl4c::detail
