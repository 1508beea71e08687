#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltl4c/property.hpp"
#include "ltl4c/trace.hpp"
#include "ltl4c/verdict.hpp"

namespace ltl4c {

/// A distinct predicate application in a body, e.g. `respond(s)`. Its
/// arguments are variable names; they stay opaque until a leaf grounds them.
struct atom {
  std::string name;
  std::vector<std::string> args;

  friend bool operator==(const atom&, const atom&) = default;
};

/// Atoms in order of first occurrence (left to right).
std::vector<atom> collect_atoms(const formula::ptr& body);

/// Index of the atom matching a predicate node, or -1.
int atom_index(std::span<const atom> atoms, const formula& predicate);

/// Set of atoms holding at one position: bit i stands for atoms[i].
using letter = std::uint32_t;

/// Finite-trace LTL. X on the last position is false, U needs a witness
/// inside the word, and atoms are false on the empty word.
bool fltl_eval(const formula::ptr& body, std::span<const atom> atoms,
               std::span<const letter> word);

/// An atom with its variables replaced by the values of one value vector.
struct ground_atom {
  symbol key = 0;
  symbol value = 0;
  bool nullary = false; // holds when the key is present at all
};

/// Grounds `atoms` for a leaf. Predicates of arity > 1 compare against the
/// comma-joined argument values, so their values are interned here.
std::vector<ground_atom> ground_atoms(std::span<const atom> atoms, const property& p,
                                      const value_vector& values, symbol_table& symbols);

letter letter_of(const event_view& e, std::span<const ground_atom> atoms) noexcept;

struct synthesis_options {
  std::size_t max_states = 10'000;
  std::size_t max_atoms = 16;
  bool minimize = true;
};

/// Deterministic Moore machine whose state labels are four-valued verdicts.
///
/// The transition table is total over all 2^k letters; states labeled top or
/// bottom are traps. Immutable once built and safe to share across threads.
class monitor_fsm {
public:
  using state = std::uint32_t;

  monitor_fsm() = default;
  monitor_fsm(std::vector<atom> atoms, std::vector<state> delta, std::vector<verdict4> labels,
              state initial);

  const std::vector<atom>& atoms() const noexcept { return atoms_; }
  std::size_t letter_count() const noexcept { return std::size_t{1} << atoms_.size(); }
  std::size_t state_count() const noexcept { return labels_.size(); }
  state initial() const noexcept { return initial_; }

  state step(state q, letter a) const noexcept { return delta_[q * letter_count() + a]; }
  verdict4 label(state q) const noexcept { return labels_[q]; }
  bool is_trap(state q) const noexcept { return is_permanent(labels_[q]); }

  verdict4 evaluate(std::span<const letter> word) const noexcept;

  /// One line per transition: `state letter-bitmask next label`, with a
  /// header naming the atoms and the initial state.
  std::string dump() const;

private:
  std::vector<atom> atoms_;
  std::vector<state> delta_;
  std::vector<verdict4> labels_;
  state initial_ = 0;
};

/// Builds the monitor for a quantifier-free body. Throws
/// synthesis_budget_exceeded when the atom or state budget is exceeded.
monitor_fsm synthesize_monitor(const formula::ptr& body, const synthesis_options& options = {});

/// Running instance of a shared monitor.
class ltl4_submonitor {
public:
  explicit ltl4_submonitor(const monitor_fsm& fsm) noexcept
      : fsm_(&fsm), state_(fsm.initial()) {}

  verdict4 step(letter a) noexcept {
    state_ = fsm_->step(state_, a);
    return verdict();
  }
  verdict4 verdict() const noexcept { return fsm_->label(state_); }
  bool trapped() const noexcept { return fsm_->is_trap(state_); }
  monitor_fsm::state state() const noexcept { return state_; }

private:
  const monitor_fsm* fsm_;
  monitor_fsm::state state_;
};

} // namespace ltl4c
