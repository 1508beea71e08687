#include "ltl4c/worker_pool.hpp"

#include <algorithm>

namespace ltl4c {

worker_pool::worker_pool(std::size_t threads) {
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t i = 1; i < threads; ++i)
    workers_.emplace_back([this] { worker_loop(); });
}

worker_pool::~worker_pool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  for (auto& t : workers_)
    t.join();
}

void worker_pool::run_chunks() {
  for (;;) {
    const auto begin = next_.fetch_add(grain_, std::memory_order_relaxed);
    if (begin >= total_)
      return;
    const auto end = std::min(total_, begin + grain_);
    try {
      (*job_)(begin, end);
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!failure_)
        failure_ = std::current_exception();
      next_.store(total_, std::memory_order_relaxed);
      return;
    }
  }
}

void worker_pool::worker_loop() {
  std::uint64_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stopping_ || generation_ != seen; });
      if (stopping_)
        return;
      seen = generation_;
    }
    run_chunks();
    {
      std::lock_guard lock(mutex_);
      if (--busy_ == 0)
        done_.notify_all();
    }
  }
}

void worker_pool::parallel_for(std::size_t n,
                               const std::function<void(std::size_t, std::size_t)>& fn,
                               std::size_t grain) {
  if (n == 0)
    return;
  if (grain == 0)
    grain = std::max<std::size_t>(1, n / (size() * 8));
  if (workers_.empty() || n <= grain) {
    fn(0, n);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    job_ = &fn;
    total_ = n;
    grain_ = grain;
    next_.store(0, std::memory_order_relaxed);
    failure_ = nullptr;
    busy_ = workers_.size();
    ++generation_;
  }
  wake_.notify_all();
  run_chunks();
  std::exception_ptr failure;
  {
    std::unique_lock lock(mutex_);
    done_.wait(lock, [&] { return busy_ == 0; });
    job_ = nullptr;
    failure = failure_;
  }
  if (failure)
    std::rethrow_exception(failure);
}

void for_each_range(worker_pool* pool, std::size_t n,
                    const std::function<void(std::size_t, std::size_t)>& fn,
                    std::size_t grain) {
  if (pool)
    pool->parallel_for(n, fn, grain);
  else if (n > 0)
    fn(0, n);
}

} // namespace ltl4c
