#include "ltl4c/quant_engine.hpp"

#include <algorithm>

#include "ltl4c/worker_pool.hpp"

namespace ltl4c {

std::uint64_t truth_vector::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : counts_)
    sum += c;
  return sum;
}

std::uint64_t truth_vector::count(verdict_set set) const noexcept {
  std::uint64_t sum = 0;
  for (auto v : all_verdicts6)
    if (set.contains(v))
      sum += (*this)[v];
  return sum;
}

truth_vector& truth_vector::operator+=(const truth_vector& other) noexcept {
  for (std::size_t i = 0; i < counts_.size(); ++i)
    counts_[i] += other.counts_[i];
  return *this;
}

bool constraint_holds(const quantifier& q, std::uint64_t matching, std::uint64_t total) {
  if (q.kind == quantifier_kind::percentage)
    return holds(compare_scaled(matching, q.constant, total), q.cmp);
  return holds(compare_scaled(matching, q.constant, 1), q.cmp);
}

namespace {

constexpr verdict_set satisfied_now{verdict6::top, verdict6::currently_true};
constexpr verdict_set satisfied_presumably{verdict6::top, verdict6::currently_true,
                                           verdict6::presumably_true};
const verdict_set not_violated_now =
    verdict_set::all().without({verdict6::bottom, verdict6::currently_false});

bool exceeds(std::uint64_t count, const rational& c, bool or_equal) {
  const auto order = compare_scaled(count, c, 1);
  return or_equal ? order >= 0 : order > 0;
}

} // namespace

node_outcome node_verdict(const quantifier& q, const child_summary& children) {
  const auto n = children.v.total();

  if (q.kind == quantifier_kind::instance) {
    // Counts of permanently satisfied children only grow.
    switch (q.cmp) {
    case comparison::greater:
      if (exceeds(children.settled_true, q.constant, false))
        return {verdict6::top, true};
      break;
    case comparison::greater_equal:
      if (exceeds(children.settled_true, q.constant, true))
        return {verdict6::top, true};
      break;
    case comparison::equal:
    case comparison::less_equal:
      if (exceeds(children.settled_true, q.constant, false))
        return {verdict6::bottom, true};
      break;
    case comparison::less:
      if (exceeds(children.settled_true, q.constant, true))
        return {verdict6::bottom, true};
      break;
    }
    // Upper-bounded and every instance seen so far is permanently violated:
    // nothing counts against the bound. Reported as top but not latched,
    // since later instances may still push the count over it.
    if (q.cmp != comparison::greater && q.cmp != comparison::greater_equal && n > 0 &&
        children.settled_false == n && constraint_holds(q, 0, n))
      return {verdict6::top, false};
  } else if (q.constant == rational(1) &&
             (q.cmp == comparison::equal || q.cmp == comparison::greater_equal)) {
    // "All instances" fails for good on the first permanent violation.
    if (children.settled_false > 0)
      return {verdict6::bottom, true};
  }

  if (n == 0) {
    // Vacuous: the constraint evaluated over an empty domain.
    return {constraint_holds(q, 0, 0) ? verdict6::presumably_true : verdict6::presumably_false,
            false};
  }
  if (constraint_holds(q, children.v.count(satisfied_now), n))
    return {verdict6::currently_true, false};
  if (!constraint_holds(q, children.v.count(not_violated_now), n))
    return {verdict6::currently_false, false};
  if (constraint_holds(q, children.v.count(satisfied_presumably), n))
    return {verdict6::presumably_true, false};
  return {verdict6::presumably_false, false};
}

monitor_tree::monitor_tree(const property& p, std::shared_ptr<const monitor_fsm> fsm,
                           std::shared_ptr<symbol_table> symbols, tree_options options)
    : property_(p), fsm_(std::move(fsm)), symbols_(std::move(symbols)), options_(options) {
  levels_.resize(property_.prefix.size());
  if (property_.prefix.empty()) {
    // A plain body is a single instance observing every event.
    insert_vector({});
    return;
  }
  auto& root = levels_[0].emplace_back();
  root.quant = &property_.prefix[0];
  const auto vacuous = node_verdict(*root.quant, {});
  root.b = vacuous.verdict;
  root.settled = vacuous.settled;
}

leaf_monitor* monitor_tree::find_leaf(const value_vector& v) {
  if (v.size() != depth() || !contains(v))
    return nullptr;
  if (depth() == 0)
    return &leaves_.front();
  quantifier_node* node = &root();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto idx = node->child_of_value.at(v[i]);
    if (i + 1 == v.size())
      return node->leaves[idx];
    node = node->nodes[idx];
  }
  return nullptr;
}

leaf_monitor& monitor_tree::insert_vector(const value_vector& v) {
  if (auto* existing = find_leaf(v))
    return *existing;
  cache_.insert(v);
  if (depth() == 0) {
    leaves_.push_back({v, ground_atoms(fsm_->atoms(), property_, v, *symbols_),
                       ltl4_submonitor(*fsm_)});
    return leaves_.back();
  }

  quantifier_node* node = &root();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    auto it = node->child_of_value.find(v[i]);
    if (it != node->child_of_value.end()) {
      node = node->nodes[it->second];
      continue;
    }
    auto& child = levels_[i + 1].emplace_back();
    child.path.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i + 1));
    child.depth = i + 1;
    child.quant = &property_.prefix[i + 1];
    const auto vacuous = node_verdict(*child.quant, {});
    child.b = vacuous.verdict;
    child.settled = vacuous.settled;
    const auto idx = static_cast<std::uint32_t>(node->nodes.size());
    node->nodes.push_back(&child);
    node->child_of_value.emplace(v[i], idx);
    node->active.push_back(idx);
    node = &child;
  }
  leaves_.push_back({v, ground_atoms(fsm_->atoms(), property_, v, *symbols_),
                     ltl4_submonitor(*fsm_)});
  const auto idx = static_cast<std::uint32_t>(node->leaves.size());
  node->leaves.push_back(&leaves_.back());
  node->child_of_value.emplace(v.back(), idx);
  node->active.push_back(idx);
  return leaves_.back();
}

void monitor_tree::reduce_node(quantifier_node& node) const {
  const bool leaf_children = !node.leaves.empty();
  auto child_state = [&](std::uint32_t idx) -> std::pair<verdict6, bool> {
    if (leaf_children)
      return {node.leaves[idx]->verdict(), node.leaves[idx]->settled()};
    return {node.nodes[idx]->b, node.nodes[idx]->settled};
  };
  auto tally = [](child_summary& s, verdict6 b, bool settled) {
    s.v[b] += 1;
    if (settled && b == verdict6::top)
      ++s.settled_true;
    if (settled && b == verdict6::bottom)
      ++s.settled_false;
  };

  child_summary summary;
  if (options_.prune) {
    std::erase_if(node.active, [&](std::uint32_t idx) {
      auto [b, settled] = child_state(idx);
      if (settled)
        tally(node.frozen, b, true);
      return settled;
    });
    summary = node.frozen;
    for (auto idx : node.active) {
      auto [b, settled] = child_state(idx);
      tally(summary, b, settled);
    }
  } else {
    for (std::uint32_t idx = 0; idx < node.child_count(); ++idx) {
      auto [b, settled] = child_state(idx);
      tally(summary, b, settled);
    }
  }

  node.v = summary.v;
  if (node.settled)
    return;
  const auto outcome = node_verdict(*node.quant, summary);
  node.b = outcome.verdict;
  node.settled = outcome.settled;
}

void monitor_tree::reduce_level(std::size_t i, worker_pool* pool) {
  auto& nodes = levels_[i];
  for_each_range(pool, nodes.size(), [&](std::size_t begin, std::size_t end) {
    for (auto k = begin; k < end; ++k)
      reduce_node(nodes[k]);
  });
}

verdict6 monitor_tree::reduce_all(worker_pool* pool) {
  for (std::size_t i = depth(); i-- > 0;)
    reduce_level(i, pool);
  return verdict();
}

verdict6 monitor_tree::verdict() const noexcept {
  if (depth() == 0)
    return leaves_.front().verdict();
  return root().b;
}

std::vector<node_snapshot> monitor_tree::snapshot(const value_order& order) const {
  std::vector<node_snapshot> out;
  for (const auto& level : levels_)
    for (const auto& n : level)
      out.push_back({n.path, false, n.quant, n.v, n.b, n.settled});
  for (const auto& l : leaves_)
    out.push_back({l.vector, true, nullptr, {}, l.verdict(), l.settled()});
  std::sort(out.begin(), out.end(), [&](const node_snapshot& a, const node_snapshot& b) {
    return order(a.path, b.path);
  });
  return out;
}

} // namespace ltl4c
