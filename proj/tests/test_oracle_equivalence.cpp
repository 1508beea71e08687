#include <doctest.h>

#include "ltl4c/pipeline.hpp"
#include "oracle/counting_oracle.hpp"
#include "oracle/random.hpp"
#include "support.hpp"

using namespace ltl4c;

namespace {

void compare(const testing_support::outcome& got, const oracle::counting_result& want) {
  CHECK(got.verdict == want.verdict);
  std::vector<testing_support::node_text> inner;
  for (const auto& n : got.nodes)
    if (!n.leaf)
      inner.push_back(n);
  REQUIRE(inner.size() == want.nodes.size());
  for (std::size_t i = 0; i < inner.size(); ++i) {
    CAPTURE(i);
    CHECK(inner[i].path == want.nodes[i].path);
    CHECK(inner[i].b == want.nodes[i].b);
    CHECK(inner[i].settled == want.nodes[i].settled);
    CHECK(inner[i].v == want.nodes[i].v);
  }
}

void run_rounds(std::uint64_t seed, int rounds, std::size_t max_quantifiers, std::size_t depth,
                std::size_t max_events) {
  oracle::random_source rng(seed);
  for (int round = 0; round < rounds; ++round) {
    const auto p = rng.property(max_quantifiers, depth);
    const auto events = rng.events(max_events);
    CAPTURE(pretty_print(p));
    CAPTURE(events.size());
    auto fsm = std::make_shared<const monitor_fsm>(synthesize_monitor(p.body));
    const auto want = oracle::evaluate(p, *fsm, events);
    for (bool prune : {true, false}) {
      CAPTURE(prune);
      compare(testing_support::run_batches(p, fsm, events, 2, 3, prune), want);
      compare(testing_support::run_batches(p, fsm, events, 1, events.size(), prune), want);
    }
  }
}

} // namespace

TEST_CASE("engine agrees with the counting oracle on one quantifier") {
  run_rounds(101, 400, 1, 3, 12);
}

TEST_CASE("engine agrees with the counting oracle on two quantifiers") {
  run_rounds(202, 400, 2, 3, 16);
}

TEST_CASE("engine agrees with the counting oracle on every prefix") {
  oracle::random_source rng(303);
  for (int round = 0; round < 100; ++round) {
    const auto p = rng.property(2, 2);
    const auto events = rng.events(10);
    CAPTURE(pretty_print(p));
    auto fsm = std::make_shared<const monitor_fsm>(synthesize_monitor(p.body));
    pipeline pipe(p, fsm);
    for (std::size_t i = 0; i < events.size(); ++i) {
      auto u = pipe.make_batch();
      u.push_back(events[i]);
      pipe.process(u);
      const std::vector<event> prefix(events.begin(), events.begin() + std::ptrdiff_t(i + 1));
      compare({pipe.verdict(), testing_support::spelled(pipe)},
              oracle::evaluate(p, *fsm, prefix));
    }
  }
}
