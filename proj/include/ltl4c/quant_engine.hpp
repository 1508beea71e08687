#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ltl4c/monitor.hpp"
#include "ltl4c/property.hpp"
#include "ltl4c/trace.hpp"
#include "ltl4c/verdict.hpp"

namespace ltl4c {

class worker_pool;

/// Number of children per six-valued verdict.
class truth_vector {
public:
  std::uint64_t& operator[](verdict6 v) noexcept { return counts_[index(v)]; }
  std::uint64_t operator[](verdict6 v) const noexcept { return counts_[index(v)]; }

  std::uint64_t total() const noexcept;
  std::uint64_t count(verdict_set set) const noexcept;

  truth_vector& operator+=(const truth_vector& other) noexcept;
  friend bool operator==(const truth_vector&, const truth_vector&) = default;

private:
  static std::size_t index(verdict6 v) noexcept { return static_cast<std::size_t>(v); }
  std::array<std::uint64_t, 6> counts_{};
};

/// Whether the counting constraint of `q` holds when `matching` of `total`
/// children are counted.
bool constraint_holds(const quantifier& q, std::uint64_t matching, std::uint64_t total);

/// Inputs to the verdict of a quantifier node.
struct child_summary {
  truth_vector v;
  std::uint64_t settled_true = 0;  // children permanently top
  std::uint64_t settled_false = 0; // children permanently bottom
};

struct node_outcome {
  verdict6 verdict;
  bool settled; // verdict is permanent
};

/// The six-valued verdict of a node, first match in lattice order.
node_outcome node_verdict(const quantifier& q, const child_summary& children);

/// Leaf of the tree: a running monitor for the body grounded by one full
/// value vector.
struct leaf_monitor {
  value_vector vector;
  std::vector<ground_atom> atoms;
  ltl4_submonitor monitor;

  verdict6 verdict() const noexcept { return to_verdict6(monitor.verdict()); }
  bool settled() const noexcept { return monitor.trapped(); }
};

struct quantifier_node {
  value_vector path; // partial value vector identifying this node
  std::size_t depth = 0;
  const quantifier* quant = nullptr;

  // Exactly one of these is used: leaves at the last quantifier depth.
  std::vector<quantifier_node*> nodes;
  std::vector<leaf_monitor*> leaves;
  std::unordered_map<symbol, std::uint32_t> child_of_value;

  // Children still contributing to v; latched ones are folded into frozen.
  std::vector<std::uint32_t> active;
  child_summary frozen;

  truth_vector v;
  verdict6 b = verdict6::presumably_false;
  bool settled = false;

  std::size_t child_count() const noexcept { return nodes.size() + leaves.size(); }
};

/// One line of a tree dump.
struct node_snapshot {
  value_vector path;
  bool leaf = false;
  const quantifier* quant = nullptr; // null for leaves
  truth_vector v;
  verdict6 b = verdict6::bottom;
  bool settled = false;

  friend bool operator==(const node_snapshot& a, const node_snapshot& b) {
    return a.path == b.path && a.leaf == b.leaf && a.v == b.v && a.b == b.b &&
           a.settled == b.settled;
  }
};

struct tree_options {
  /// Fold latched children into frozen counts and stop revisiting them.
  bool prune = true;
};

/// The hierarchy of quantifier nodes and leaf monitors for one property.
///
/// Mutation (insert_vector) is single-threaded; reduce_level may fan out
/// over the nodes of one depth.
class monitor_tree {
public:
  monitor_tree(const property& p, std::shared_ptr<const monitor_fsm> fsm,
               std::shared_ptr<symbol_table> symbols, tree_options options = {});
  monitor_tree(const monitor_tree&) = delete;
  monitor_tree& operator=(const monitor_tree&) = delete;

  /// Number of quantifiers.
  std::size_t depth() const noexcept { return property_.prefix.size(); }
  const property& prop() const noexcept { return property_; }
  const monitor_fsm& fsm() const noexcept { return *fsm_; }

  bool contains(const value_vector& v) const { return cache_.contains(v); }
  /// Creates the path for `v` if needed and returns its leaf.
  leaf_monitor& insert_vector(const value_vector& v);
  leaf_monitor* find_leaf(const value_vector& v);

  quantifier_node& root() { return levels_.front().front(); }
  const quantifier_node& root() const { return levels_.front().front(); }
  std::deque<quantifier_node>& level(std::size_t i) { return levels_[i]; }
  const std::deque<quantifier_node>& level(std::size_t i) const { return levels_[i]; }
  std::deque<leaf_monitor>& leaves() noexcept { return leaves_; }
  const std::deque<leaf_monitor>& leaves() const noexcept { return leaves_; }

  /// Child nodes (or leaves) of a node as materialized so far.
  std::size_t children_of(const quantifier_node& node) const noexcept {
    return node.child_count();
  }
  static std::uint64_t count_matching(const quantifier_node& node, verdict_set set) noexcept {
    return node.v.count(set);
  }

  /// Recomputes v and b for every node at depth i from its children.
  void reduce_level(std::size_t i, worker_pool* pool = nullptr);
  /// Reduces all depths bottom-up and returns the property verdict.
  verdict6 reduce_all(worker_pool* pool = nullptr);

  verdict6 verdict() const noexcept;

  /// Every node and leaf, ordered by path (prefixes first).
  std::vector<node_snapshot> snapshot(const value_order& order) const;

  /// Recomputes v and b of one node. Safe to run concurrently for
  /// distinct nodes of the same depth.
  void reduce_node(quantifier_node& node) const;

private:
  property property_;
  std::shared_ptr<const monitor_fsm> fsm_;
  std::shared_ptr<symbol_table> symbols_;
  tree_options options_;
  std::vector<std::deque<quantifier_node>> levels_;
  std::deque<leaf_monitor> leaves_;
  std::unordered_set<value_vector, value_vector_hash> cache_;
};

} // namespace ltl4c
