#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "ltl4c/monitor.hpp"
#include "ltl4c/property.hpp"
#include "ltl4c/quant_engine.hpp"
#include "ltl4c/trace.hpp"
#include "ltl4c/worker_pool.hpp"

namespace ltl4c {

struct pipeline_options {
  std::size_t threads = 1;
  /// Guard keys whose values order numerically rather than as text.
  std::vector<std::string> numeric_keys;
  synthesis_options synthesis;
  tree_options tree;
};

enum class phase : std::uint8_t { sort, spawn, distribute, reduce };
inline constexpr std::size_t phase_count = 4;

/// Bookkeeping that lets tests check the phases of a batch never overlap.
class phase_monitor {
public:
  void enter(phase p);
  void leave(phase p);

  /// Phases in the order they started, across all batches.
  const std::vector<phase>& order() const noexcept { return order_; }
  /// Work chunks that ran while a different phase was active.
  std::uint64_t overlaps() const noexcept { return overlaps_.load(); }
  std::uint64_t chunks(phase p) const noexcept { return chunks_[index(p)].load(); }

  /// Wraps a chunk of parallel work of phase p.
  void chunk_begin(phase p) noexcept;
  void chunk_end(phase p) noexcept;

private:
  static std::size_t index(phase p) noexcept { return static_cast<std::size_t>(p); }
  std::vector<phase> order_;
  std::array<std::atomic<int>, phase_count> active_{};
  std::array<std::atomic<std::uint64_t>, phase_count> chunks_{};
  std::atomic<int> current_{-1};
  std::atomic<std::uint64_t> overlaps_{0};
};

/// Persistent evaluation state for one property: the monitor tree plus the
/// synthesized monitor. Each call to process() runs one batch through
/// sort, spawn, distribute and reduce.
class pipeline {
public:
  pipeline(const property& p, pipeline_options options = {},
           std::shared_ptr<symbol_table> symbols = nullptr);
  pipeline(const property& p, std::shared_ptr<const monitor_fsm> fsm,
           pipeline_options options = {}, std::shared_ptr<symbol_table> symbols = nullptr);

  /// Runs one batch. Event indices must continue where the last batch ended.
  verdict6 process(const trace& batch);

  slice_map sort_trace(const trace& batch);
  void spawn_monitors(const slice_map& slices);
  void distribute(const trace& batch, const slice_map& slices);
  verdict6 apply_quantifiers();

  verdict6 verdict() const noexcept { return last_verdict_; }
  std::uint64_t events_processed() const noexcept { return events_; }
  std::size_t threads() const noexcept { return pool_ ? pool_->size() : 1; }

  const property& prop() const noexcept { return tree_->prop(); }
  const monitor_tree& tree() const noexcept { return *tree_; }
  const monitor_fsm& fsm() const noexcept { return *fsm_; }
  const std::shared_ptr<symbol_table>& symbols() const noexcept { return symbols_; }
  const value_order& order() const noexcept { return order_; }
  const phase_monitor& phases() const noexcept { return phases_; }

  /// Snapshot of the tree ordered by path.
  std::vector<node_snapshot> snapshot() const { return tree_->snapshot(order_); }

  /// A fresh trace sharing this pipeline's symbols, indexed after the
  /// events processed so far.
  trace make_batch() const { return trace(symbols_, events_); }

private:
  void run_phase(phase p, std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                 std::size_t grain = 0);

  std::shared_ptr<symbol_table> symbols_;
  std::shared_ptr<const monitor_fsm> fsm_;
  std::unique_ptr<worker_pool> pool_;
  std::unique_ptr<monitor_tree> tree_;
  std::vector<symbol> keys_;
  value_order order_;
  std::vector<leaf_monitor*> slice_leaves_;
  std::uint64_t events_ = 0;
  verdict6 last_verdict_;
  phase_monitor phases_;
};

/// Evaluates a whole trace as a single batch.
verdict6 run_offline(pipeline& p, const trace& u);

struct batch_policy {
  std::size_t max_events = 65536;
  std::chrono::milliseconds max_latency{100};
};

struct batch_result {
  std::uint64_t batch = 0;         // 0 for the verdict before any input
  std::uint64_t events = 0;        // events in this batch
  std::uint64_t total_events = 0;  // events so far
  verdict6 verdict;
};

/// Reads newline-delimited records from `in` on a background thread and
/// feeds them to `p` in batches, reporting after each (and once up front).
/// Malformed records are skipped or abort the run according to `ingest`.
void run_online(pipeline& p, std::istream& in, const batch_policy& policy,
                const ingest_options& ingest, const std::function<void(const batch_result&)>& emit);

} // namespace ltl4c
