#include "f2m/parallel.hpp"

namespace f2m {

ThreadPool::ThreadPool(int threads) {
  if (threads < 1) threads = 1;
  workers_.reserve(static_cast<std::size_t>(threads - 1));
  for (int t = 0; t < threads - 1; ++t) {
    workers_.emplace_back([this] { worker_loop(); });
  }
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    stop_ = true;
  }
  wake_.notify_all();
  for (auto& w : workers_) w.join();
}

void ThreadPool::worker_loop() {
  std::uint64_t seen = 0;
  for (;;) {
    {
      std::unique_lock<std::mutex> lock(mutex_);
      wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
    }
    run_job();
  }
}

void ThreadPool::run_job() {
  const auto* body = body_;
  const std::int64_t items = items_;
  const std::int64_t chunk = chunk_;
  std::int64_t finished = 0;
  for (;;) {
    std::int64_t ci;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (next_chunk_ * chunk >= items) break;
      ci = next_chunk_++;
    }
    const std::int64_t begin = ci * chunk;
    const std::int64_t end = std::min(items, begin + chunk);
    try {
      (*body)(ci, begin, end);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
    ++finished;
  }
  if (finished > 0) {
    std::lock_guard<std::mutex> lock(mutex_);
    pending_chunks_ -= finished;
    if (pending_chunks_ == 0) done_.notify_all();
  }
}

void ThreadPool::for_chunks(
    std::int64_t items, std::int64_t chunk,
    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& body) {
  if (items <= 0) return;
  if (chunk < 1) chunk = 1;
  const std::int64_t n_chunks = chunk_count(items, chunk);

  if (workers_.empty() || n_chunks == 1) {
    for (std::int64_t ci = 0; ci < n_chunks; ++ci) {
      body(ci, ci * chunk, std::min(items, (ci + 1) * chunk));
    }
    return;
  }

  {
    std::lock_guard<std::mutex> lock(mutex_);
    body_ = &body;
    items_ = items;
    chunk_ = chunk;
    next_chunk_ = 0;
    pending_chunks_ = n_chunks;
    error_ = nullptr;
    ++generation_;
  }
  wake_.notify_all();
  run_job();
  {
    std::unique_lock<std::mutex> lock(mutex_);
    done_.wait(lock, [&] { return pending_chunks_ == 0; });
    body_ = nullptr;
    if (error_) {
      auto err = error_;
      error_ = nullptr;
      std::rethrow_exception(err);
    }
  }
}

double combine_partials(const std::vector<double>& partials) {
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

}  // namespace f2m
