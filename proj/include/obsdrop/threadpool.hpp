#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace obsdrop {

// Persistent worker pool for index-parallel loops. Work items are claimed
// through an atomic counter; the calling thread participates, so a pool of
// size 1 runs everything inline. Results must be written to per-index slots
// by the callers — scheduling order never affects outputs.
class ThreadPool {
 public:
  explicit ThreadPool(int threads = 0) {
    int n = threads > 0 ? threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    for (int i = 0; i + 1 < n; ++i)
      workers_.emplace_back([this] { worker_loop(); });
  }

  ~ThreadPool() {
    {
      std::unique_lock<std::mutex> lock(mutex_);
      stop_ = true;
      ++job_id_;
    }
    cv_.notify_all();
    for (auto& t : workers_) t.join();
  }

  int size() const { return static_cast<int>(workers_.size()) + 1; }

  // Runs fn(0..n-1), blocking until all items complete and every worker has
  // left the job. Rethrows the first exception thrown by fn.
  void parallel_for(int n, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    {
      std::unique_lock<std::mutex> lock(mutex_);
      fn_ = &fn;
      total_ = n;
      next_.store(0, std::memory_order_relaxed);
      done_.store(0, std::memory_order_relaxed);
      error_ = nullptr;
      ++job_id_;
    }
    cv_.notify_all();
    run_items(fn);
    std::unique_lock<std::mutex> lock(mutex_);
    finished_cv_.wait(lock, [this] {
      return done_.load() >= total_ && active_workers_ == 0;
    });
    fn_ = nullptr;
    if (error_) std::rethrow_exception(error_);
  }

 private:
  void run_items(const std::function<void(int)>& fn) {
    for (;;) {
      const int i = next_.fetch_add(1, std::memory_order_relaxed);
      if (i >= total_) break;
      try {
        fn(i);
      } catch (...) {
        std::unique_lock<std::mutex> lock(mutex_);
        if (!error_) error_ = std::current_exception();
      }
      done_.fetch_add(1, std::memory_order_acq_rel);
    }
  }

  void worker_loop() {
    std::uint64_t seen = 0;
    for (;;) {
      const std::function<void(int)>* fn = nullptr;
      {
        std::unique_lock<std::mutex> lock(mutex_);
        cv_.wait(lock, [&] { return stop_ || job_id_ != seen; });
        if (stop_) return;
        seen = job_id_;
        fn = fn_;
        if (fn) ++active_workers_;
      }
      if (!fn) continue;
      run_items(*fn);
      {
        std::unique_lock<std::mutex> lock(mutex_);
        --active_workers_;
      }
      finished_cv_.notify_all();
    }
  }

  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::condition_variable finished_cv_;
  const std::function<void(int)>* fn_ = nullptr;
  std::uint64_t job_id_ = 0;
  int total_ = 0;
  int active_workers_ = 0;
  std::atomic<int> next_{0};
  std::atomic<int> done_{0};
  std::exception_ptr error_;
  bool stop_ = false;
};

}  // namespace obsdrop
