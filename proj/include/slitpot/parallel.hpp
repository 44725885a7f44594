#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace slitpot {

/// Samples are grouped into blocks of this size; partial results are combined
/// in block order so the floating-point reduction never depends on threads.
inline constexpr std::size_t kBlockSize = 4096;

/// Worker count: SLITPOT_WORKERS if set, else the hardware concurrency.
unsigned default_workers();

/// Runs fn(begin, end) -> Acc on consecutive blocks of [0, n) and returns the
/// per-block results in block order. `workers == 0` means default_workers().
template <class Acc, class Fn>
std::vector<Acc> map_blocks(std::size_t n, unsigned workers, Fn fn) {
  const std::size_t nblocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<Acc> out(nblocks);
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(nblocks, 1)));
  auto run = [&](std::size_t b) {
    const std::size_t lo = b * kBlockSize;
    out[b] = fn(lo, std::min(n, lo + kBlockSize));
  };
  if (workers <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run(b);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= nblocks) return;
        try {
          run(b);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          next.store(nblocks);
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace slitpot
