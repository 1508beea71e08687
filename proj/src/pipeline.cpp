#include "ltl4c/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <condition_variable>
#include <deque>
#include <istream>
#include <mutex>
#include <thread>
#include <atomic>

namespace ltl4c {

// ------------------------------------------------------------ phase monitor

void phase_monitor::enter(phase p) {
  order_.push_back(p);
  current_.store(static_cast<int>(p));
}

void phase_monitor::leave(phase) { current_.store(-1); }

void phase_monitor::chunk_begin(phase p) noexcept {
  chunks_[index(p)].fetch_add(1, std::memory_order_relaxed);
  active_[index(p)].fetch_add(1);
  bool clash = current_.load() != static_cast<int>(p);
  for (std::size_t q = 0; q < phase_count; ++q)
    if (q != index(p) && active_[q].load() > 0)
      clash = true;
  if (clash)
    overlaps_.fetch_add(1);
}

void phase_monitor::chunk_end(phase p) noexcept { active_[index(p)].fetch_sub(1); }

// ----------------------------------------------------------------- pipeline

namespace {

std::vector<bool> numeric_positions(const property& p, const std::vector<std::string>& numeric) {
  std::vector<bool> out;
  for (const auto& q : p.prefix)
    out.push_back(std::find(numeric.begin(), numeric.end(), q.guard) != numeric.end());
  return out;
}

struct sort_entry {
  std::uint64_t key;  // packed ranks (or the first rank when they do not fit)
  std::uint32_t index; // position within the batch
};

// Packed keys up to this width are sorted by stable radix passes.
constexpr std::uint32_t max_radix_bits = 44;
constexpr std::uint32_t max_digit_bits = 11;

} // namespace

pipeline::pipeline(const property& p, pipeline_options options,
                   std::shared_ptr<symbol_table> symbols)
    : pipeline(p, std::make_shared<const monitor_fsm>(synthesize_monitor(p.body, options.synthesis)),
               options, std::move(symbols)) {}

pipeline::pipeline(const property& p, std::shared_ptr<const monitor_fsm> fsm,
                   pipeline_options options, std::shared_ptr<symbol_table> symbols)
    : symbols_(symbols ? std::move(symbols) : std::make_shared<symbol_table>()),
      fsm_(std::move(fsm)), order_(*symbols_, numeric_positions(p, options.numeric_keys)) {
  if (options.threads != 1)
    pool_ = std::make_unique<worker_pool>(options.threads);
  tree_ = std::make_unique<monitor_tree>(p, fsm_, symbols_, options.tree);
  for (const auto& key : p.guard_keys())
    keys_.push_back(symbols_->intern(key));
  last_verdict_ = tree_->verdict();
}

void pipeline::run_phase(phase p, std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn,
                         std::size_t grain) {
  for_each_range(pool_.get(), n, [&](std::size_t begin, std::size_t end) {
    phases_.chunk_begin(p);
    fn(begin, end);
    phases_.chunk_end(p);
  }, grain);
}

slice_map pipeline::sort_trace(const trace& batch) {
  phases_.enter(phase::sort);
  const std::size_t m = batch.size();
  const std::size_t n = keys_.size();

  // Map every event to its value vector.
  std::vector<symbol> flat(m * n);
  std::vector<std::uint8_t> valid(m);
  run_phase(phase::sort, m, [&](std::size_t begin, std::size_t end) {
    for (auto i = begin; i < end; ++i) {
      const auto e = batch[i];
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        auto v = e.value_of(keys_[j]);
        ok = v.has_value();
        if (ok)
          flat[i * n + j] = *v;
      }
      valid[i] = ok;
    }
  });

  // Dense ranks in the canonical value order, per position. Large batches
  // mark values in a table indexed by symbol; small ones sort what they saw.
  const std::size_t symbol_count = symbols_->size();
  const bool dense = m * 8 >= symbol_count;
  std::vector<std::vector<symbol>> values(n);
  if (dense) {
    std::vector<std::atomic<std::uint8_t>> seen(n * symbol_count);
    run_phase(phase::sort, m, [&](std::size_t begin, std::size_t end) {
      for (auto i = begin; i < end; ++i)
        if (valid[i])
          for (std::size_t j = 0; j < n; ++j) {
            auto& mark = seen[j * symbol_count + flat[i * n + j]];
            if (!mark.load(std::memory_order_relaxed))
              mark.store(1, std::memory_order_relaxed);
          }
    });
    for (std::size_t j = 0; j < n; ++j)
      for (symbol v = 0; v < symbol_count; ++v)
        if (seen[j * symbol_count + v].load(std::memory_order_relaxed))
          values[j].push_back(v);
  } else {
    for (std::size_t i = 0; i < m; ++i)
      if (valid[i])
        for (std::size_t j = 0; j < n; ++j)
          values[j].push_back(flat[i * n + j]);
    for (auto& v : values) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }
  // by_id[j] lists (symbol, rank) sorted by symbol for the lookups below.
  std::vector<std::vector<std::pair<symbol, std::uint32_t>>> by_id(n);
  std::vector<std::vector<std::uint32_t>> rank(dense ? n : 0,
                                               std::vector<std::uint32_t>(symbol_count));
  std::uint32_t bits = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::sort(values[j].begin(), values[j].end(),
              [&](symbol a, symbol b) { return order_.compare(a, b, j) < 0; });
    for (std::size_t r = 0; r < values[j].size(); ++r) {
      if (dense)
        rank[j][values[j][r]] = static_cast<std::uint32_t>(r);
      else
        by_id[j].emplace_back(values[j][r], static_cast<std::uint32_t>(r));
    }
    std::sort(by_id[j].begin(), by_id[j].end());
    bits += static_cast<std::uint32_t>(std::bit_width(values[j].size()));
  }
  std::vector<std::uint32_t> ranked(m * n);
  run_phase(phase::sort, m, [&](std::size_t begin, std::size_t end) {
    for (auto i = begin; i < end; ++i)
      if (valid[i])
        for (std::size_t j = 0; j < n; ++j) {
          const auto v = flat[i * n + j];
          if (dense) {
            ranked[i * n + j] = rank[j][v];
          } else {
            const auto it = std::lower_bound(by_id[j].begin(), by_id[j].end(),
                                             std::pair<symbol, std::uint32_t>{v, 0});
            ranked[i * n + j] = it->second;
          }
        }
  });
  const bool packed = bits <= 64;

  std::vector<sort_entry> entries;
  entries.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    if (valid[i])
      entries.push_back({0, static_cast<std::uint32_t>(i)});
  auto ranks_of = [&](std::uint32_t i, std::size_t j) { return ranked[i * n + j]; };
  run_phase(phase::sort, entries.size(), [&](std::size_t begin, std::size_t end) {
    for (auto k = begin; k < end; ++k) {
      std::uint64_t key = 0;
      if (packed) {
        for (std::size_t j = 0; j < n; ++j)
          key = (key << std::bit_width(values[j].size())) | ranks_of(entries[k].index, j);
      } else {
        key = ranks_of(entries[k].index, 0);
      }
      entries[k].key = key;
    }
  });

  auto less = [&](const sort_entry& a, const sort_entry& b) {
    if (a.key != b.key)
      return a.key < b.key;
    if (!packed)
      for (std::size_t j = 1; j < n; ++j) {
        const auto ra = ranks_of(a.index, j);
        const auto rb = ranks_of(b.index, j);
        if (ra != rb)
          return ra < rb;
      }
    return a.index < b.index;
  };
  auto same_vector = [&](const sort_entry& a, const sort_entry& b) {
    if (a.key != b.key)
      return false;
    if (!packed)
      for (std::size_t j = 1; j < n; ++j)
        if (ranks_of(a.index, j) != ranks_of(b.index, j))
          return false;
    return true;
  };

  if (packed && bits <= max_radix_bits) {
    // Stable, so equal keys keep ascending event order. Each part counts
    // and scatters its own contiguous block.
    const std::size_t size = entries.size();
    const std::uint32_t passes = (bits + max_digit_bits - 1) / max_digit_bits;
    const std::uint32_t digit_bits = passes ? (bits + passes - 1) / passes : 0;
    const std::size_t buckets = std::size_t{1} << digit_bits;
    const std::size_t blocks = std::min<std::size_t>(std::max<std::size_t>(size, 1), threads());
    std::vector<sort_entry> buffer(passes ? size : 0);
    std::vector<std::size_t> offset(blocks * buckets);
    for (std::uint32_t pass = 0; pass < passes; ++pass) {
      const auto shift = pass * digit_bits;
      auto digit = [&](const sort_entry& e) { return (e.key >> shift) & (buckets - 1); };
      std::fill(offset.begin(), offset.end(), 0);
      run_phase(phase::sort, blocks, [&](std::size_t begin, std::size_t end) {
        for (auto b = begin; b < end; ++b)
          for (auto k = size * b / blocks; k < size * (b + 1) / blocks; ++k)
            ++offset[b * buckets + digit(entries[k])];
      }, 1);
      std::size_t running = 0;
      for (std::size_t d = 0; d < buckets; ++d)
        for (std::size_t b = 0; b < blocks; ++b) {
          const auto count = offset[b * buckets + d];
          offset[b * buckets + d] = running;
          running += count;
        }
      run_phase(phase::sort, blocks, [&](std::size_t begin, std::size_t end) {
        for (auto b = begin; b < end; ++b)
          for (auto k = size * b / blocks; k < size * (b + 1) / blocks; ++k)
            buffer[offset[b * buckets + digit(entries[k])]++] = entries[k];
      }, 1);
      entries.swap(buffer);
    }
  } else {
    // Sort runs in parallel, then merge pairs of runs in rounds.
    const std::size_t runs = entries.size() < 4096 ? 1 : threads();
    std::vector<std::size_t> bounds(runs + 1);
    for (std::size_t r = 0; r <= runs; ++r)
      bounds[r] = entries.size() * r / runs;
    run_phase(phase::sort, runs, [&](std::size_t begin, std::size_t end) {
      for (auto r = begin; r < end; ++r)
        std::sort(entries.begin() + static_cast<std::ptrdiff_t>(bounds[r]),
                  entries.begin() + static_cast<std::ptrdiff_t>(bounds[r + 1]), less);
    }, 1);
    if (runs > 1) {
      std::vector<sort_entry> buffer(entries.size());
      for (std::size_t width = 1; width < runs; width *= 2) {
        const std::size_t pairs = (runs + 2 * width - 1) / (2 * width);
        run_phase(phase::sort, pairs, [&](std::size_t begin, std::size_t end) {
          for (auto k = begin; k < end; ++k) {
            const auto lo = bounds[std::min(runs, 2 * width * k)];
            const auto mid = bounds[std::min(runs, 2 * width * k + width)];
            const auto hi = bounds[std::min(runs, 2 * width * (k + 1))];
            std::merge(entries.begin() + static_cast<std::ptrdiff_t>(lo),
                       entries.begin() + static_cast<std::ptrdiff_t>(mid),
                       entries.begin() + static_cast<std::ptrdiff_t>(mid),
                       entries.begin() + static_cast<std::ptrdiff_t>(hi),
                       buffer.begin() + static_cast<std::ptrdiff_t>(lo), less);
          }
        }, 1);
        entries.swap(buffer);
      }
    }
  }

  // Compact runs of equal vectors into per-vector index lists.
  std::vector<std::size_t> offsets;
  for (std::size_t k = 0; k < entries.size(); ++k)
    if (k == 0 || !same_vector(entries[k - 1], entries[k]))
      offsets.push_back(k);
  std::vector<value_vector> vectors(offsets.size());
  offsets.push_back(entries.size());
  std::vector<std::uint64_t> indices(entries.size());
  const auto first = batch.first_index();
  run_phase(phase::sort, vectors.size(), [&](std::size_t begin, std::size_t end) {
    for (auto s = begin; s < end; ++s) {
      const auto head = entries[offsets[s]].index;
      vectors[s].assign(flat.begin() + static_cast<std::ptrdiff_t>(head * n),
                        flat.begin() + static_cast<std::ptrdiff_t>((head + 1) * n));
      for (auto k = offsets[s]; k < offsets[s + 1]; ++k)
        indices[k] = first + entries[k].index;
    }
  });
  phases_.leave(phase::sort);
  return slice_map(std::move(vectors), std::move(offsets), std::move(indices));
}

void pipeline::spawn_monitors(const slice_map& slices) {
  phases_.enter(phase::spawn);
  // Dedup lookups fan out; tree mutation is committed in canonical order.
  std::vector<std::uint8_t> fresh(slices.size());
  run_phase(phase::spawn, slices.size(), [&](std::size_t begin, std::size_t end) {
    for (auto i = begin; i < end; ++i)
      fresh[i] = !tree_->contains(slices.vector(i));
  });
  slice_leaves_.assign(slices.size(), nullptr);
  for (std::size_t i = 0; i < slices.size(); ++i)
    slice_leaves_[i] = fresh[i] ? &tree_->insert_vector(slices.vector(i))
                                : tree_->find_leaf(slices.vector(i));
  phases_.leave(phase::spawn);
}

void pipeline::distribute(const trace& batch, const slice_map& slices) {
  phases_.enter(phase::distribute);
  const auto first = batch.first_index();
  run_phase(phase::distribute, slices.size(), [&](std::size_t begin, std::size_t end) {
    for (auto s = begin; s < end; ++s) {
      leaf_monitor& leaf = *slice_leaves_[s];
      for (auto index : slices.slice(s)) {
        if (leaf.settled())
          break;
        leaf.monitor.step(letter_of(batch[index - first], leaf.atoms));
      }
    }
  }, 1);
  phases_.leave(phase::distribute);
}

verdict6 pipeline::apply_quantifiers() {
  phases_.enter(phase::reduce);
  for (std::size_t i = tree_->depth(); i-- > 0;) {
    auto& level = tree_->level(i);
    run_phase(phase::reduce, level.size(), [&](std::size_t begin, std::size_t end) {
      // Same work as monitor_tree::reduce_level, split across the pool.
      for (auto k = begin; k < end; ++k)
        tree_->reduce_node(level[k]);
    });
  }
  last_verdict_ = tree_->verdict();
  phases_.leave(phase::reduce);
  return last_verdict_;
}

verdict6 pipeline::process(const trace& batch) {
  if (batch.first_index() != events_)
    throw error("batch starts at event " + std::to_string(batch.first_index()) + ", expected " +
                std::to_string(events_));
  const auto slices = sort_trace(batch);
  spawn_monitors(slices);
  distribute(batch, slices);
  events_ += batch.size();
  return apply_quantifiers();
}

verdict6 run_offline(pipeline& p, const trace& u) { return p.process(u); }

// ----------------------------------------------------------------- streaming

void run_online(pipeline& p, std::istream& in, const batch_policy& policy,
                const ingest_options& ingest, const std::function<void(const batch_result&)>& emit) {
  std::mutex mutex;
  std::condition_variable ready;
  std::deque<event> queue;
  bool finished = false;
  std::exception_ptr failure;

  std::thread reader([&] {
    std::string line;
    std::size_t line_number = 0;
    try {
      while (std::getline(in, line)) {
        ++line_number;
        std::optional<event> e;
        try {
          e = parse_record(line, line_number);
        } catch (const ingest_error& err) {
          if (ingest.on_malformed == malformed_policy::abort)
            throw;
          if (ingest.warn)
            ingest.warn(err);
          continue;
        }
        if (!e)
          continue;
        std::lock_guard lock(mutex);
        queue.push_back(std::move(*e));
        ready.notify_one();
      }
    } catch (...) {
      std::lock_guard lock(mutex);
      failure = std::current_exception();
    }
    std::lock_guard lock(mutex);
    finished = true;
    ready.notify_one();
  });

  batch_result result;
  result.verdict = p.verdict();
  emit(result);

  const auto max_events = std::max<std::size_t>(policy.max_events, 1);
  for (;;) {
    std::vector<event> pending;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return finished || !queue.empty(); });
      if (queue.empty())
        break;
      const auto deadline = std::chrono::steady_clock::now() + policy.max_latency;
      for (;;) {
        while (!queue.empty() && pending.size() < max_events) {
          pending.push_back(std::move(queue.front()));
          queue.pop_front();
        }
        if (pending.size() >= max_events || finished)
          break;
        if (!ready.wait_until(lock, deadline, [&] { return finished || !queue.empty(); }))
          break;
      }
    }
    auto batch = p.make_batch();
    batch.reserve(pending.size());
    for (const auto& e : pending)
      batch.push_back(e);
    result.verdict = p.process(batch);
    ++result.batch;
    result.events = pending.size();
    result.total_events = p.events_processed();
    emit(result);
  }
  reader.join();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace ltl4c
