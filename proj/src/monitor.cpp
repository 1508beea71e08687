#include "ltl4c/monitor.hpp"

#include <fmt/format.h>

namespace ltl4c {

monitor_fsm::monitor_fsm(std::vector<atom> atoms, std::vector<state> delta,
                         std::vector<verdict4> labels, state initial)
    : atoms_(std::move(atoms)), delta_(std::move(delta)), labels_(std::move(labels)),
      initial_(initial) {}

verdict4 monitor_fsm::evaluate(std::span<const letter> word) const noexcept {
  state q = initial_;
  for (auto a : word)
    q = step(q, a);
  return label(q);
}

std::string monitor_fsm::dump() const {
  std::string out = "# atoms:";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    out += fmt::format(" {}={}", i, atoms_[i].name);
    if (!atoms_[i].args.empty())
      out += fmt::format("({})", fmt::join(atoms_[i].args, ","));
  }
  out += fmt::format("\n# states: {}\n# initial: {}\n", state_count(), initial_);
  const auto width = std::max<std::size_t>(atoms_.size(), 1);
  for (state q = 0; q < state_count(); ++q)
    for (std::size_t a = 0; a < letter_count(); ++a) {
      std::string bits(width, '0');
      for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (a >> i & 1u)
          bits[width - 1 - i] = '1';
      out += fmt::format("{} {} {} {}\n", q, bits, step(q, static_cast<letter>(a)),
                         token(label(q)));
    }
  return out;
}

} // namespace ltl4c
