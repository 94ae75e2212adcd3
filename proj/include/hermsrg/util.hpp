#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>

namespace hermsrg {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Wall-clock budget for long-running searches, in seconds.
// Taken from HERMSRG_BUDGET_SECS when set, otherwise `fallback_secs`.
double search_budget_secs(double fallback_secs);

// Splits [0, n) into contiguous chunks and runs `body(begin, end)` on up to
// `threads` workers (0 = hardware concurrency).  The caller's body must only
// write to per-chunk or index-owned state; results are then independent of
// the thread count.
void parallel_for(std::int64_t n, int threads,
                  const std::function<void(std::int64_t, std::int64_t)>& body);

// Like parallel_for but hands out blocks of `grain` indices from a shared
// counter, so uneven per-index work stays balanced across workers.
void parallel_for_dynamic(std::int64_t n, int threads, std::int64_t grain,
                          const std::function<void(std::int64_t, std::int64_t)>& body);

int default_thread_count();

std::string sha256_hex(const void* data, std::size_t len);
inline std::string sha256_hex(const std::string& s) {
  return sha256_hex(s.data(), s.size());
}

}  // namespace hermsrg
