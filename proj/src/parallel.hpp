#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hybridvol::detail {

// Welford accumulator; merge() is Chan's pairwise update.
struct RunningStats {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& other) {
    if (other.count == 0.0) return;
    if (count == 0.0) {
      *this = other;
      return;
    }
    const double n = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * (other.count / n);
    m2 += other.m2 + delta * delta * (count * other.count / n);
    count = n;
  }

  double std_error() const {
    if (count < 2.0) return 0.0;
    return std::sqrt(std::max(m2, 0.0) / (count - 1.0) / count);
  }
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(block, begin, end) over fixed-size blocks of [0, n). Blocks are
// handed to workers dynamically, but the block partition itself does not
// depend on the thread count, so per-block results merged in block order
// are reproducible. The exception of the lowest failing block is rethrown.
template <class Fn>
void for_each_block(std::size_t n, std::size_t block_size, unsigned threads,
                    Fn&& fn) {
  const std::size_t blocks = (n + block_size - 1) / block_size;
  std::vector<std::exception_ptr> errors(blocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      const std::size_t begin = b * block_size;
      const std::size_t end = std::min(n, begin + block_size);
      try {
        fn(b, begin, end);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads),
                                                  std::max<std::size_t>(blocks, 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hybridvol::detail
