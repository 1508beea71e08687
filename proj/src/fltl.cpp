#include "ltl4c/monitor.hpp"

#include <algorithm>

namespace ltl4c {
namespace {

void collect(const formula::ptr& f, std::vector<atom>& out) {
  if (!f)
    return;
  if (f->type() == formula::kind::predicate) {
    atom a{f->name(), f->args()};
    if (std::find(out.begin(), out.end(), a) == out.end())
      out.push_back(std::move(a));
    return;
  }
  collect(f->lhs(), out);
  collect(f->rhs(), out);
}

// Post-order listing so every operand precedes its parent.
void flatten(const formula::ptr& f, std::vector<const formula*>& out) {
  if (f->lhs())
    flatten(f->lhs(), out);
  if (f->rhs())
    flatten(f->rhs(), out);
  out.push_back(f.get());
}

} // namespace

std::vector<atom> collect_atoms(const formula::ptr& body) {
  std::vector<atom> out;
  collect(body, out);
  return out;
}

int atom_index(std::span<const atom> atoms, const formula& predicate) {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i].name == predicate.name() && atoms[i].args == predicate.args())
      return static_cast<int>(i);
  return -1;
}

bool fltl_eval(const formula::ptr& body, std::span<const atom> atoms,
               std::span<const letter> word) {
  std::vector<const formula*> nodes;
  flatten(body, nodes);
  const std::size_t n = word.size();
  const std::size_t width = n + 1; // column n is the empty suffix
  std::vector<char> table(nodes.size() * width, 0);
  auto slot = [&](const formula* f) {
    // Operands are always earlier in `nodes`; search backwards from the parent.
    return static_cast<std::size_t>(std::find(nodes.begin(), nodes.end(), f) - nodes.begin());
  };

  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const formula& f = *nodes[k];
    char* row = &table[k * width];
    const char* l = f.lhs() ? &table[slot(f.lhs().get()) * width] : nullptr;
    const char* r = f.rhs() ? &table[slot(f.rhs().get()) * width] : nullptr;
    const int bit = f.type() == formula::kind::predicate ? atom_index(atoms, f) : -1;
    for (std::size_t j = width; j-- > 0;) {
      const std::size_t i = j;
      switch (f.type()) {
      case formula::kind::truth:
        row[i] = 1;
        break;
      case formula::kind::predicate:
        row[i] = i < n && bit >= 0 && ((word[i] >> bit) & 1u);
        break;
      case formula::kind::negation:
        row[i] = !l[i];
        break;
      case formula::kind::conjunction:
        row[i] = l[i] && r[i];
        break;
      case formula::kind::next:
        row[i] = i + 1 < n && l[i + 1];
        break;
      case formula::kind::until:
        row[i] = i < n && (r[i] || (l[i] && row[i + 1]));
        break;
      }
    }
  }
  return table[(nodes.size() - 1) * width] != 0;
}

std::vector<ground_atom> ground_atoms(std::span<const atom> atoms, const property& p,
                                      const value_vector& values, symbol_table& symbols) {
  std::vector<ground_atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) {
    ground_atom g;
    g.key = symbols.intern(a.name);
    if (a.args.empty()) {
      g.nullary = true;
    } else if (a.args.size() == 1) {
      g.value = values[static_cast<std::size_t>(p.variable_index(a.args[0]))];
    } else {
      std::string joined;
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i)
          joined += ',';
        joined += symbols.name(values[static_cast<std::size_t>(p.variable_index(a.args[i]))]);
      }
      g.value = symbols.intern(joined);
    }
    out.push_back(g);
  }
  return out;
}

letter letter_of(const event_view& e, std::span<const ground_atom> atoms) noexcept {
  letter out = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& g = atoms[i];
    bool holds;
    if (g.nullary) {
      holds = e.has_flag(g.key) || e.value_of(g.key).has_value();
    } else {
      auto v = e.value_of(g.key);
      holds = v && *v == g.value;
    }
    if (holds)
      out |= letter{1} << i;
  }
  return out;
}

} // namespace ltl4c
