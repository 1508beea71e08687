#pragma once

// Shared helpers for the test suites.

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "ltl4c/pipeline.hpp"

namespace testing_support {

inline ltl4c::trace make_trace(const std::vector<ltl4c::event>& events,
                               std::shared_ptr<ltl4c::symbol_table> symbols,
                               std::uint64_t first = 0) {
  ltl4c::trace u(std::move(symbols), first);
  for (const auto& e : events)
    u.push_back(e);
  return u;
}

/// Node snapshot with values spelled out, comparable across symbol tables.
struct node_text {
  std::vector<std::string> path;
  bool leaf;
  std::array<std::uint64_t, 6> v;
  ltl4c::verdict6 b;
  bool settled;
  friend bool operator==(const node_text&, const node_text&) = default;
};

inline std::vector<node_text> spelled(const ltl4c::pipeline& p) {
  std::vector<node_text> out;
  for (const auto& n : p.snapshot()) {
    node_text t{{}, n.leaf, {}, n.b, n.settled};
    for (auto s : n.path)
      t.path.push_back(p.symbols()->name(s));
    for (auto v : ltl4c::all_verdicts6)
      t.v[static_cast<std::size_t>(v)] = n.v[v];
    out.push_back(std::move(t));
  }
  return out;
}

struct outcome {
  ltl4c::verdict6 verdict;
  std::vector<node_text> nodes;
};

/// Runs `events` through a fresh pipeline in batches of `batch` events.
inline outcome run_batches(const ltl4c::property& prop,
                           std::shared_ptr<const ltl4c::monitor_fsm> fsm,
                           const std::vector<ltl4c::event>& events, std::size_t threads,
                           std::size_t batch, bool prune = true) {
  ltl4c::pipeline_options options;
  options.threads = threads;
  options.tree.prune = prune;
  ltl4c::pipeline p(prop, std::move(fsm), options);
  batch = std::max<std::size_t>(batch, 1);
  for (std::size_t i = 0; i < events.size(); i += batch) {
    auto u = p.make_batch();
    for (std::size_t k = i; k < std::min(events.size(), i + batch); ++k)
      u.push_back(events[k]);
    p.process(u);
  }
  return {p.verdict(), spelled(p)};
}

inline ltl4c::event make_event(std::initializer_list<std::pair<const char*, const char*>> bindings,
                               std::initializer_list<const char*> flags = {}) {
  ltl4c::event e;
  for (auto [k, v] : bindings)
    e.bindings.emplace(k, v);
  for (auto f : flags)
    e.flags.insert(f);
  return e;
}

/// The five-event login trace.
inline std::vector<ltl4c::event> login_trace() {
  return {
      make_event({{"rid", "12"}, {"user", "Adam"}}, {"login", "unauthorized"}),
      make_event({{"rid", "13"}, {"user", "Adam"}}, {"login", "unauthorized"}),
      make_event({{"rid", "14"}, {"user", "Jack"}}, {"login", "authorized"}),
      make_event({{"rid", "15"}, {"user", "Adam"}}, {"login", "unauthorized"}),
      make_event({{"rid", "16"}, {"user", "Adam"}}, {"login", "unauthorized"}),
  };
}

inline const char* login_property =
    "forall x : user(x) => exists[<=3] r : rid(r) => (login && unauthorized)";

} // namespace testing_support
