#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace f2m {

/// Fixed chunk sizes for data-parallel loops. Chunk boundaries depend only on
/// the item count, never on the thread count, so per-chunk results (and any
/// reduction combined in chunk order) are identical for 1 or N threads.
inline constexpr std::int64_t kNodeChunk = 2048;
inline constexpr std::int64_t kEdgeChunk = 8192;

inline int default_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

inline std::int64_t chunk_count(std::int64_t items, std::int64_t chunk) {
  return items <= 0 ? 0 : (items + chunk - 1) / chunk;
}

/// Pool of worker threads executing chunked index ranges.
///
/// Workers claim chunks through an atomic counter; the calling thread joins
/// in. Exceptions thrown by the body are captured and rethrown on the caller.
class ThreadPool {
 public:
  explicit ThreadPool(int threads);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int thread_count() const { return static_cast<int>(workers_.size()) + 1; }

  /// Runs body(chunk_index, begin, end) for every chunk of [0, items).
  /// Blocks until all chunks finished.
  void for_chunks(std::int64_t items, std::int64_t chunk,
                  const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& body);

 private:
  void worker_loop();
  void run_job();

  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;

  const std::function<void(std::int64_t, std::int64_t, std::int64_t)>* body_ = nullptr;
  std::int64_t items_ = 0;
  std::int64_t chunk_ = 0;
  std::int64_t next_chunk_ = 0;
  std::int64_t pending_chunks_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

/// Sums values[chunk] layouts deterministically: chunk partials are expected
/// to be combined in ascending chunk order by the caller.
double combine_partials(const std::vector<double>& partials);

}  // namespace f2m
