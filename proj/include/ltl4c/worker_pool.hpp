#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ltl4c {

/// Fixed set of threads running data-parallel loops.
///
/// Work is split into chunks claimed from a shared counter, so idle threads
/// pick up whatever is left. The calling thread takes part in every loop.
class worker_pool {
public:
  /// `threads` counts the caller; 0 means hardware concurrency.
  explicit worker_pool(std::size_t threads = 1);
  ~worker_pool();
  worker_pool(const worker_pool&) = delete;
  worker_pool& operator=(const worker_pool&) = delete;

  std::size_t size() const noexcept { return workers_.size() + 1; }

  /// Calls fn(begin, end) over disjoint ranges covering [0, n). Returns when
  /// all ranges are done; the first exception thrown is rethrown here.
  void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                    std::size_t grain = 0);

private:
  void worker_loop();
  void run_chunks();

  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  std::uint64_t generation_ = 0;
  std::size_t busy_ = 0;
  bool stopping_ = false;

  // Current job.
  const std::function<void(std::size_t, std::size_t)>* job_ = nullptr;
  std::size_t total_ = 0;
  std::size_t grain_ = 1;
  std::atomic<std::size_t> next_{0};
  std::exception_ptr failure_;
};

/// Runs fn over [0, n) on `pool`, or inline when pool is null.
void for_each_range(worker_pool* pool, std::size_t n,
                    const std::function<void(std::size_t, std::size_t)>& fn,
                    std::size_t grain = 0);

} // namespace ltl4c
