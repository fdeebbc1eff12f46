#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace wormkit {

// Number of worker threads. Reads WORMKIT_THREADS; falls back to the
// machine's hardware concurrency.
unsigned worker_count();

// Runs body(block) for every block in [0, n_blocks) on up to worker_count()
// threads. Blocks are independent; callers write into per-block slots.
void parallel_for_blocks(std::size_t n_blocks,
                         const std::function<void(std::size_t)>& body);

// Pairwise sum of values[0..n) in a fixed tree order.
template <typename T>
T pairwise_sum(const T* values, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 16) {
    T acc = values[0];
    for (std::size_t i = 1; i < n; ++i) acc += values[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, n - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(values.data(), values.size());
}

// Sum of term(i) for i in [0, n). The index range is cut into fixed-size
// blocks whatever the worker count, each block is summed pairwise, and block
// partials are combined pairwise, so the result is bit-identical across
// thread counts.
template <typename T, typename Term>
T deterministic_sum(std::size_t n, Term&& term, std::size_t block = 4096) {
  const std::size_t n_blocks = (n + block - 1) / block;
  std::vector<T> partial(n_blocks);
  parallel_for_blocks(n_blocks, [&](std::size_t b) {
    const std::size_t lo = b * block;
    const std::size_t hi = std::min(n, lo + block);
    std::vector<T> values;
    values.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) values.push_back(term(i));
    partial[b] = pairwise_sum(values);
  });
  return pairwise_sum(partial);
}

// Counter-based generator: the draw for (seed, counter) is a pure function,
// so any partition of the counter space across workers reproduces the serial
// stream exactly. Mixing is SplitMix64's finalizer.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter) const;

  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

}  // namespace wormkit
