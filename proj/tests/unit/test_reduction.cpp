#include <cstdlib>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "wormkit/reduction.hpp"

using namespace wormkit;

TEST(PairwiseSum, SmallAndLarge) {
  std::vector<double> v(1000, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 100.0, 1e-12);
  EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
}

TEST(DeterministicSum, IndependentOfWorkerCount) {
  auto term = [](std::size_t i) { return 1.0 / (1.0 + static_cast<double>(i) * 0.37); };
  ::setenv("WORMKIT_THREADS", "1", 1);
  const double one = deterministic_sum<double>(100'000, term, 512);
  ::setenv("WORMKIT_THREADS", "4", 1);
  const double four = deterministic_sum<double>(100'000, term, 512);
  ::unsetenv("WORMKIT_THREADS");
  EXPECT_EQ(one, four);
}

TEST(DeterministicSum, BlockSizeOnlyChangesRounding) {
  auto term = [](std::size_t i) { return static_cast<double>(i % 7); };
  EXPECT_EQ(deterministic_sum<double>(10'000, term, 100),
            deterministic_sum<double>(10'000, term, 4096));
}

TEST(ParallelForBlocks, VisitsEveryBlockOnceAndRethrows) {
  std::vector<int> hits(257, 0);
  parallel_for_blocks(hits.size(), [&](std::size_t b) { hits[b] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for_blocks(8,
                                   [](std::size_t b) {
                                     if (b == 5) throw std::runtime_error("boom");
                                   }),
               std::runtime_error);
}

TEST(CounterRng, PureFunctionOfSeedAndCounter) {
  const CounterRng a(42), b(42), c(43);
  EXPECT_EQ(a.bits(17), b.bits(17));
  EXPECT_NE(a.bits(17), c.bits(17));
  EXPECT_NE(a.bits(17), a.bits(18));
}

TEST(CounterRng, UniformRangeAndMean) {
  const CounterRng rng(7);
  double sum = 0.0;
  const int n = 200'000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // Standard error of the mean is 1/sqrt(12 n) ~ 6.5e-4.
  EXPECT_NEAR(sum / n, 0.5, 4e-3);
}

TEST(WorkerCount, ReadsEnvironment) {
  ::setenv("WORMKIT_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  ::unsetenv("WORMKIT_THREADS");
  EXPECT_GE(worker_count(), 1u);
}
