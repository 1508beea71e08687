#include <doctest.h>

#include <map>

#include "ltl4c/pipeline.hpp"
#include "oracle/random.hpp"
#include "support.hpp"

using namespace ltl4c;
using testing_support::make_event;

namespace {

quantifier make_quantifier(quantifier_kind kind, comparison cmp, rational c) {
  quantifier q;
  q.kind = kind;
  q.cmp = cmp;
  q.constant = c;
  q.variable = "x";
  q.guard = "g";
  return q;
}

child_summary summary(std::initializer_list<std::pair<verdict6, std::uint64_t>> counts,
                      std::uint64_t settled_true = 0, std::uint64_t settled_false = 0) {
  child_summary s;
  for (auto [v, n] : counts)
    s.v[v] = n;
  s.settled_true = settled_true;
  s.settled_false = settled_false;
  return s;
}

const auto at_most_3 =
    make_quantifier(quantifier_kind::instance, comparison::less_equal, rational(3));
const auto all = make_quantifier(quantifier_kind::percentage, comparison::equal, rational(1));

} // namespace

TEST_CASE("truth vectors") {
  truth_vector v;
  v[verdict6::top] = 4;
  v[verdict6::presumably_false] = 2;
  CHECK(v.total() == 6);
  CHECK(v.count({}) == 0);
  CHECK(v.count(verdict_set::all()) == 6);
  CHECK(v.count({verdict6::top, verdict6::currently_true}) == 4);
}

TEST_CASE("constraint arithmetic") {
  CHECK(!constraint_holds(at_most_3, 4, 4));
  CHECK(constraint_holds(at_most_3, 3, 10));
  CHECK(!constraint_holds(all, 1, 2));
  CHECK(constraint_holds(all, 2, 2));
  const auto half =
      make_quantifier(quantifier_kind::percentage, comparison::greater_equal, rational(1, 2));
  CHECK(constraint_holds(half, 1, 2));
  CHECK(!constraint_holds(half, 0, 2));
  // Empty domain: 0 compared with c * 0.
  CHECK(constraint_holds(all, 0, 0));
  CHECK(!constraint_holds(
      make_quantifier(quantifier_kind::percentage, comparison::greater, rational(0)), 0, 0));
}

TEST_CASE("node verdicts from the login example") {
  // <Adam>: four permanently satisfied requests against "at most 3".
  auto adam = node_verdict(at_most_3, summary({{verdict6::top, 4}}, 4, 0));
  CHECK(adam.verdict == verdict6::bottom);
  CHECK(adam.settled);
  // <Jack>: its only request is permanently violated.
  auto jack = node_verdict(at_most_3, summary({{verdict6::bottom, 1}}, 0, 1));
  CHECK(jack.verdict == verdict6::top);
  CHECK(!jack.settled);
  // Root: one top, one bottom (settled) under "all".
  auto root = node_verdict(all, summary({{verdict6::top, 1}, {verdict6::bottom, 1}}, 0, 1));
  CHECK(root.verdict == verdict6::bottom);
  CHECK(root.settled);
}

TEST_CASE("vacuous nodes") {
  CHECK(node_verdict(all, {}).verdict == verdict6::presumably_true);
  const auto some =
      make_quantifier(quantifier_kind::instance, comparison::greater_equal, rational(1));
  CHECK(node_verdict(some, {}).verdict == verdict6::presumably_false);
  CHECK(node_verdict(at_most_3, {}).verdict == verdict6::presumably_true);
  const auto more_than_none =
      make_quantifier(quantifier_kind::percentage, comparison::greater, rational(0));
  CHECK(node_verdict(more_than_none, {}).verdict == verdict6::presumably_false);
  // An instance constraint satisfied by zero is decided by the count rule.
  const auto at_least_0 =
      make_quantifier(quantifier_kind::instance, comparison::greater_equal, rational(0));
  CHECK(node_verdict(at_least_0, {}).verdict == verdict6::top);
}

TEST_CASE("non-permanent rows in lattice order") {
  CHECK(node_verdict(all, summary({{verdict6::currently_true, 2}})).verdict ==
        verdict6::currently_true);
  CHECK(node_verdict(all, summary({{verdict6::top, 1}, {verdict6::presumably_true, 1}})).verdict ==
        verdict6::presumably_true);
  CHECK(node_verdict(all, summary({{verdict6::top, 1}, {verdict6::presumably_false, 1}})).verdict ==
        verdict6::presumably_false);
  CHECK(node_verdict(all, summary({{verdict6::top, 1}, {verdict6::currently_false, 1}})).verdict ==
        verdict6::currently_false);
  // A non-settled bottom child does not trigger the permanent rule.
  CHECK(node_verdict(all, summary({{verdict6::top, 1}, {verdict6::bottom, 1}})).verdict ==
        verdict6::currently_false);
  const auto most =
      make_quantifier(quantifier_kind::percentage, comparison::greater_equal, rational(95, 100));
  CHECK(node_verdict(most, summary({{verdict6::presumably_true, 19}, {verdict6::presumably_false, 1}}))
            .verdict == verdict6::presumably_true);
  CHECK(node_verdict(most, summary({{verdict6::presumably_true, 18}, {verdict6::presumably_false, 2}}))
            .verdict == verdict6::presumably_false);
  CHECK(node_verdict(most, summary({{verdict6::presumably_true, 18}, {verdict6::bottom, 2}}, 0, 2))
            .verdict == verdict6::currently_false);
}

TEST_CASE("tree construction") {
  const auto p = parse_property(testing_support::login_property);
  auto symbols = std::make_shared<symbol_table>();
  auto fsm = std::make_shared<const monitor_fsm>(synthesize_monitor(p.body));
  monitor_tree tree(p, fsm, symbols);
  CHECK(tree.children_of(tree.root()) == 0);

  const value_vector adam12{symbols->intern("Adam"), symbols->intern("12")};
  const value_vector adam13{symbols->intern("Adam"), symbols->intern("13")};
  tree.insert_vector(adam12);
  tree.insert_vector(adam13);
  CHECK(tree.children_of(tree.root()) == 1);
  CHECK(tree.level(1).size() == 1);
  CHECK(tree.children_of(tree.level(1).front()) == 2);
  CHECK(tree.leaves().size() == 2);

  // Idempotent.
  auto& again = tree.insert_vector(adam12);
  CHECK(&again == tree.find_leaf(adam12));
  CHECK(tree.leaves().size() == 2);

  const value_vector jack14{symbols->intern("Jack"), symbols->intern("14")};
  tree.insert_vector(jack14);
  CHECK(tree.children_of(tree.root()) == 2);

  tree.reduce_all();
  const auto before = tree.snapshot(value_order(*symbols));
  tree.reduce_all();
  CHECK(tree.snapshot(value_order(*symbols)) == before);
}

TEST_CASE("independent vectors hang off the root") {
  const auto p = parse_property("forall x : g(x) => F r");
  auto symbols = std::make_shared<symbol_table>();
  monitor_tree tree(p, std::make_shared<const monitor_fsm>(synthesize_monitor(p.body)), symbols);
  for (auto v : {"a", "b", "c", "d"})
    tree.insert_vector({symbols->intern(v)});
  CHECK(tree.children_of(tree.root()) == 4);
  tree.reduce_all();
  CHECK(monitor_tree::count_matching(tree.root(), {verdict6::presumably_false}) == 4);
  CHECK(tree.verdict() == verdict6::presumably_false);
}

TEST_CASE("login example through the tree") {
  const auto p = parse_property(testing_support::login_property);
  pipeline pipe(p);
  auto u = pipe.make_batch();
  for (const auto& e : testing_support::login_trace())
    u.push_back(e);
  CHECK(pipe.process(u) == verdict6::bottom);

  const auto& tree = pipe.tree();
  const auto& adam = tree.level(1)[0];
  const auto& jack = tree.level(1)[1];
  REQUIRE(pipe.symbols()->name(adam.path[0]) == "Adam");
  REQUIRE(pipe.symbols()->name(jack.path[0]) == "Jack");
  CHECK(adam.b == verdict6::bottom);
  CHECK(monitor_tree::count_matching(adam, {verdict6::top}) == 4);
  CHECK(jack.b == verdict6::top);
  CHECK(tree.root().v[verdict6::top] == 1);
  CHECK(tree.root().v[verdict6::bottom] == 1);
}

TEST_CASE("existential thresholds latch at the crossing event") {
  struct row {
    const char* op;
    std::size_t crossing; // 1-based index of the satisfied instance
    verdict6 verdict;
  };
  for (auto r : {row{">", 4, verdict6::top}, row{">=", 3, verdict6::top},
                 row{"==", 4, verdict6::bottom}, row{"<", 3, verdict6::bottom},
                 row{"<=", 4, verdict6::bottom}}) {
    CAPTURE(r.op);
    const auto p = parse_property(std::string("exists[") + r.op + "3] r : rid(r) => ok");
    pipeline pipe(p);
    for (std::size_t i = 1; i <= 6; ++i) {
      auto u = pipe.make_batch();
      u.push_back(make_event({{"rid", std::to_string(i).c_str()}}, {"ok"}));
      const auto v = pipe.process(u);
      CAPTURE(i);
      if (i < r.crossing)
        CHECK(!is_permanent(v));
      else
        CHECK(v == r.verdict);
    }
  }
}

TEST_CASE("all-instances latches on the first permanent violation") {
  const auto p = parse_property("forall s : socket(s) => ok");
  pipeline pipe(p);
  auto u = pipe.make_batch();
  u.push_back(make_event({{"socket", "1"}}, {"ok"}));
  u.push_back(make_event({{"socket", "2"}}, {"ok"}));
  CHECK(pipe.process(u) == verdict6::currently_true);
  auto w = pipe.make_batch();
  w.push_back(make_event({{"socket", "3"}}));
  CHECK(pipe.process(w) == verdict6::bottom);
  auto z = pipe.make_batch();
  z.push_back(make_event({{"socket", "4"}}, {"ok"}));
  CHECK(pipe.process(z) == verdict6::bottom);
}

TEST_CASE("latched nodes never change and counts are conserved") {
  oracle::random_source rng(43);
  for (int round = 0; round < 300; ++round) {
    const auto p = rng.property(2, 3);
    const auto events = rng.events(10);
    for (bool prune : {true, false}) {
      pipeline_options options;
      options.tree.prune = prune;
      pipeline pipe(p, options);
      std::map<std::vector<std::string>, verdict6> latched;
      for (const auto& e : events) {
        auto u = pipe.make_batch();
        u.push_back(e);
        pipe.process(u);
        for (const auto& n : testing_support::spelled(pipe)) {
          if (n.leaf)
            continue;
          if (auto it = latched.find(n.path); it != latched.end())
            CHECK(n.b == it->second);
          else if (n.settled)
            latched.emplace(n.path, n.b);
        }
        for (std::size_t d = 0; d < pipe.tree().depth(); ++d)
          for (const auto& node : pipe.tree().level(d))
            CHECK(node.v.total() == node.child_count());
      }
    }
  }
}
