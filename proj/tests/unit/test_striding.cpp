#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "ppart/algorithms.hpp"
#include "support.hpp"

namespace ppart {
namespace {

using testing::make_keys;
using testing::partitioned_correctly;
using testing::Shape;

template <class F>
auto on(std::vector<Key>& a, F&& f) {
  exec::Runtime rt;
  const auto v = rt.bind(std::span<Key>(a));
  decltype(f(std::declval<Task&>(), v)) out{};
  rt.run([&](Task& t) { out = f(t, v); });
  return out;
}

::testing::AssertionResult resolved_outside(const std::vector<Key>& a, Unresolved u) {
  for (std::size_t i = 0; i < u.lo; ++i) {
    if (a[i] >= 0) return ::testing::AssertionFailure() << "successor at " << i << " before " << u.lo;
  }
  for (std::size_t i = u.hi; i < a.size(); ++i) {
    if (a[i] < 0) return ::testing::AssertionFailure() << "predecessor at " << i << " after " << u.hi;
  }
  return ::testing::AssertionSuccess();
}

// Every line of chunk j holds predecessors in its first half of lines.
std::vector<Key> half_lines_first(std::size_t n, std::size_t line, std::size_t groups) {
  std::vector<Key> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t within = (i / line) % groups;
    a[i] = within < groups / 2 ? -1 - static_cast<Key>(i) : 1 + static_cast<Key>(i);
  }
  return a;
}

TEST(BlockStartIndex, Examples) {
  const std::vector<std::uint64_t> x{3, 1};
  EXPECT_EQ(block_start_index(x, 4, 2, 1, 1), 1U);
  EXPECT_EQ(block_start_index(x, 4, 2, 1, 2), 13U);
  EXPECT_THROW(block_start_index(x, 4, 2, 0, 1), std::out_of_range);
  EXPECT_THROW(block_start_index(x, 4, 2, 5, 1), std::out_of_range);
  EXPECT_THROW(block_start_index(x, 4, 2, 1, 3), std::out_of_range);
}

TEST(BlockStartIndex, EveryLineCoveredOnce) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t g = 1 + rng.uniform(20);
    const std::size_t s = 1 + rng.uniform(20);
    const std::size_t b = 1 + rng.uniform(5);
    std::vector<std::uint64_t> x(s);
    for (auto& v : x) v = 1 + rng.uniform(g);
    std::set<std::size_t> seen;
    for (std::size_t i = 1; i <= g; ++i) {
      for (std::size_t j = 1; j <= s; ++j) {
        const std::size_t start = block_start_index(x, g, b, i, j);
        ASSERT_EQ((start - 1) % b, 0U);
        ASSERT_EQ((start - 1) / (g * b), j - 1);
        ASSERT_TRUE(seen.insert(start).second);
      }
    }
    ASSERT_EQ(seen.size(), g * s);
  }
}

TEST(Strided, SmallLayout) {
  // n=8, g=2, b=2: group 1 owns lines {1,3}, group 2 owns lines {2,4}.
  std::vector<Key> a{10, -1, 11, -2, 12, -3, 13, -4};
  const Unresolved u = on(a, [](Task& t, const View<Key>& v) {
    return strided_partial(t, v, LessThan{0}, StridedParams{2, 2});
  });
  EXPECT_EQ(a, (std::vector<Key>{-3, -1, -4, -2, 12, 10, 13, 11}));
  EXPECT_EQ(u.lo, 4U);
  EXPECT_EQ(u.hi, 6U);
}

TEST(Strided, AllPredecessorsGiveSentinel) {
  std::vector<Key> a(100, -1);
  const Unresolved u = on(a, [](Task& t, const View<Key>& v) {
    return strided_partial(t, v, LessThan{0}, StridedParams{3, 0});
  });
  EXPECT_EQ(u.lo, 100U);
  EXPECT_EQ(u.hi, 100U);
}

TEST(Strided, ScanOracleOnRandomInputs) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = make_keys(4096, rng.unit(), trial % 2 ? Shape::random : Shape::duplicates, rng.next());
    StridedParams p{1 + rng.uniform(8), 1 + rng.uniform(40)};
    const Unresolved u = on(a, [&](Task& t, const View<Key>& v) { return strided_partial(t, v, LessThan{0}, p); });
    ASSERT_LE(u.lo, u.hi);
    ASSERT_TRUE(resolved_outside(a, u));
  }
}

TEST(Strided, CleanupLengths) {
  const std::size_t n = 1 << 15;
  const std::size_t g = 32;
  auto adversarial = half_lines_first(n, 1, g);
  const auto r = on(adversarial, [&](Task& t, const View<Key>& v) {
    return strided_partition(t, v, LessThan{0}, StridedParams{1, g});
  });
  EXPECT_GE(r.cleanup, n / 4);

  std::vector<Key> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = static_cast<Key>(i) - static_cast<Key>(n / 3);
  const auto s = on(sorted, [&](Task& t, const View<Key>& v) {
    return strided_partition(t, v, LessThan{0}, StridedParams{4, g});
  });
  EXPECT_LE(s.cleanup, g * 4);
}

TEST(Strided, RandomCleanupConcentrates) {
  const std::size_t n = 1 << 12;
  const std::size_t g = 16;
  const double bound = 4 * std::sqrt(n * g * std::log(static_cast<double>(n)));
  int within = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto a = make_keys(n, 0.5, Shape::random, seed);
    const auto r = on(a, [&](Task& t, const View<Key>& v) {
      return strided_partition(t, v, LessThan{0}, StridedParams{1, g});
    });
    within += r.cleanup <= bound;
  }
  EXPECT_GE(within, 990);
}

TEST(Smoothed, ParameterValidation) {
  SmoothedParams p;
  p.delta = 0.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.delta = 0.1;
  p.epsilon = 0.7;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.epsilon = 0;
  p.line = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Smoothed, LayoutMeetsChunkRequirement) {
  for (std::size_t n : {1000U, 1U << 16, 1U << 20}) {
    SmoothedParams p;
    p.line = 4;
    p.delta = 0.2;
    const GroupLayout lay = smoothed_layout(n, p);
    const double need = std::log(n * static_cast<double>(n)) / (p.delta * p.delta);
    if (lay.groups >= 2) {
      EXPECT_GT(static_cast<double>(lay.chunks), need);
      EXPECT_GE(lay.padded(), n);
    }
  }
}

TEST(Smoothed, PartialStepAllPredecessors) {
  std::vector<Key> a(1 << 14, -2);
  SmoothedParams p;
  p.line = 4;
  p.delta = 0.3;
  const Unresolved u = on(a, [&](Task& t, const View<Key>& v) {
    return partial_partition(t, v, LessThan{0}, p, Rng(5));
  });
  EXPECT_EQ(u.lo, a.size());
  EXPECT_EQ(u.hi, a.size());
}

TEST(Smoothed, PartialStepScanOracle) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.uniform(1 << 15);
    auto a = make_keys(n, rng.unit(), trial % 3 ? Shape::random : Shape::duplicates, rng.next());
    const auto before = a;
    SmoothedParams p;
    p.line = 1 + rng.uniform(8);
    p.delta = 0.45;
    const Unresolved u = on(a, [&](Task& t, const View<Key>& v) {
      return partial_partition(t, v, LessThan{0}, p, Rng(trial));
    });
    ASSERT_TRUE(resolved_outside(a, u));
    auto x = a;
    auto y = before;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    ASSERT_EQ(x, y);
  }
}

TEST(Smoothed, SameSeedSameResult) {
  auto a = make_keys(1 << 14, 0.5, Shape::random, 4);
  auto b = a;
  SmoothedParams p;
  p.line = 4;
  p.delta = 0.3;
  const auto u1 = on(a, [&](Task& t, const View<Key>& v) { return partial_partition(t, v, LessThan{0}, p, Rng(7)); });
  const auto u2 = on(b, [&](Task& t, const View<Key>& v) { return partial_partition(t, v, LessThan{0}, p, Rng(7)); });
  EXPECT_EQ(a, b);
  EXPECT_EQ(u1.lo, u2.lo);
  EXPECT_EQ(u1.hi, u2.hi);
}

TEST(Smoothed, RecursionDepthLogarithmic) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.uniform(1 << 14);
    auto a = make_keys(n, rng.unit(), Shape::random, rng.next());
    const auto before = a;
    SmoothedParams p;
    p.line = 1 + rng.uniform(4);
    p.delta = 0.05 + 0.4 * rng.unit();
    const auto r = on(a, [&](Task& t, const View<Key>& v) {
      return smoothed_recursive(t, v, LessThan{0}, p, Rng(trial));
    });
    ASSERT_TRUE(partitioned_correctly(before, a, 0, r.split));
    ASSERT_LE(r.depth, static_cast<std::size_t>(std::ceil(std::log2(n))) + 2);
  }
}

TEST(Smoothed, MetadataStaysNearChunkCount) {
  const std::size_t n = 1 << 18;
  auto a = make_keys(n, 0.5, Shape::random, 2);
  PartitionOptions o;
  o.line = 4;
  o.delta = 0.25;
  const RunReport r = run_partition(Algorithm::smoothed_rec, std::span<Key>(a), LessThan{0}, o);
  const double eps = 1.0 / n;
  const std::size_t s = std::max(smoothed_min_chunks(n, o.delta, eps), smoothed_min_chunks(n, kRecursionDelta, eps));
  EXPECT_LE(r.peak_aux_words, s + std::bit_width(n));
}

TEST(Hybrid, DegenerateRangeSkipsCleanup) {
  std::vector<Key> a(1 << 14, -1);
  PartitionOptions o;
  o.line = 4;
  o.delta = 0.3;
  const RunReport r = run_partition(Algorithm::smoothed_hybrid, std::span<Key>(a), LessThan{0}, o);
  EXPECT_EQ(r.split, a.size());
  std::vector<Key> b(1 << 14, 3);
  EXPECT_EQ(run_partition(Algorithm::smoothed_hybrid, std::span<Key>(b), LessThan{0}, o).split, 0U);
}

TEST(Hybrid, RandomInputs) {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.uniform(1 << 16);
    auto a = make_keys(n, rng.unit(), trial % 2 ? Shape::random : Shape::duplicates, rng.next());
    const auto before = a;
    PartitionOptions o;
    o.line = 1 + rng.uniform(16);
    o.delta = 0.1 + 0.3 * rng.unit();
    o.seed = trial;
    const RunReport r = run_partition(Algorithm::smoothed_hybrid, std::span<Key>(a), LessThan{0}, o);
    ASSERT_TRUE(partitioned_correctly(before, a, 0, r.split));
  }
}

}  // namespace
}  // namespace ppart
