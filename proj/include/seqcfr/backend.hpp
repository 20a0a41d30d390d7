// Copyright 2026 The seqcfr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace seqcfr {

// Fixed-size worker pool running one block-partitioned loop at a time. The
// calling thread executes block 0 itself.
class ThreadPool {
 public:
  explicit ThreadPool(int num_threads) : num_threads_(std::max(1, num_threads)) {
    for (int i = 1; i < num_threads_; ++i) {
      workers_.emplace_back([this, i] { WorkerLoop(i); });
    }
  }

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  ~ThreadPool() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      stop_ = true;
    }
    start_cv_.notify_all();
    for (auto& w : workers_) w.join();
  }

  int size() const { return num_threads_; }

  // Runs body(block) for block in [0, size()) and waits for all of them.
  void Run(const std::function<void(int)>& body) {
    if (num_threads_ == 1) {
      body(0);
      return;
    }
    std::lock_guard<std::mutex> run_lock(run_mu_);
    {
      std::lock_guard<std::mutex> lock(mu_);
      body_ = &body;
      pending_ = num_threads_ - 1;
      ++generation_;
    }
    start_cv_.notify_all();
    body(0);
    std::unique_lock<std::mutex> lock(mu_);
    done_cv_.wait(lock, [this] { return pending_ == 0; });
    body_ = nullptr;
  }

 private:
  void WorkerLoop(int index) {
    uint64_t seen = 0;
    for (;;) {
      const std::function<void(int)>* body;
      {
        std::unique_lock<std::mutex> lock(mu_);
        start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        body = body_;
      }
      (*body)(index);
      {
        std::lock_guard<std::mutex> lock(mu_);
        if (--pending_ == 0) done_cv_.notify_one();
      }
    }
  }

  const int num_threads_;
  std::vector<std::thread> workers_;
  std::mutex run_mu_;
  std::mutex mu_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(int)>* body_ = nullptr;
  uint64_t generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;
};

enum class BackendKind { kSerial, kParallel };

// Execution backend for the sparse kernels. Loops are split into a fixed set
// of contiguous blocks (one per worker) so that results depend only on the
// input and the worker count. Also counts scalar work: one unit per
// multiply-add in a matrix product and one per element of a vector op.
class Backend {
 public:
  // Loops shorter than this run on the calling thread.
  static constexpr int64_t kDefaultGrain = 2048;

  static Backend Serial() { return Backend(BackendKind::kSerial, 1, nullptr); }

  // Pools are created once per worker count and shared for the process
  // lifetime.
  static Backend Parallel(int workers) {
    if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
    static std::mutex mu;
    static std::map<int, std::shared_ptr<ThreadPool>> pools;
    std::lock_guard<std::mutex> lock(mu);
    auto& pool = pools[workers];
    if (!pool) pool = std::make_shared<ThreadPool>(workers);
    return Backend(BackendKind::kParallel, workers, pool);
  }

  // Worker count from SEQCFR_WORKERS, else the hardware concurrency.
  static int DefaultWorkers() {
    if (const char* env = std::getenv("SEQCFR_WORKERS")) {
      const int n = std::atoi(env);
      if (n >= 1) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
  }

  BackendKind kind() const { return kind_; }
  int workers() const { return workers_; }
  std::string name() const { return kind_ == BackendKind::kSerial ? "serial" : "parallel"; }

  uint64_t work() const { return work_; }
  void reset_work() { work_ = 0; }
  void add_work(uint64_t units) { work_ += units; }

  void set_grain(int64_t grain) { grain_ = std::max<int64_t>(1, grain); }

  // Calls body(begin, end) over a fixed partition of [0, n).
  template <typename Body>
  void For(int64_t n, Body&& body) const {
    if (n <= 0) return;
    if (kind_ == BackendKind::kSerial || workers_ == 1 || n < grain_) {
      body(int64_t{0}, n);
      return;
    }
    const int blocks = workers_;
    const std::function<void(int)> task = [&](int b) {
      const int64_t begin = n * b / blocks;
      const int64_t end = n * (b + 1) / blocks;
      if (begin < end) body(begin, end);
    };
    pool_->Run(task);
  }

 private:
  Backend(BackendKind kind, int workers, std::shared_ptr<ThreadPool> pool)
      : kind_(kind), workers_(workers), pool_(std::move(pool)) {}

  BackendKind kind_;
  int workers_;
  std::shared_ptr<ThreadPool> pool_;
  uint64_t work_ = 0;
  int64_t grain_ = kDefaultGrain;
};

}  // namespace seqcfr
