#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ppart/quicksort.hpp"
#include "support.hpp"

namespace ppart {
namespace {

using testing::make_keys;
using testing::Shape;

TEST(ChoosePivot, Cases) {
  Rng rng(1);
  const std::vector<Key> one{42};
  EXPECT_EQ(choose_pivot(one, rng), 42);
  const std::vector<Key> equal(9, 7);
  EXPECT_EQ(choose_pivot(equal, rng), 7);
  EXPECT_EQ(choose_pivot(equal, rng, PivotRule::median_of_three), 7);
  EXPECT_THROW(choose_pivot(std::span<const Key>(), rng), std::invalid_argument);
}

TEST(ChoosePivot, SeededSequenceIsDeterministic) {
  std::vector<Key> keys(1000);
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = static_cast<Key>(i * 37 % 1000);
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(choose_pivot(keys, a), choose_pivot(keys, b));
}

TEST(ChoosePivot, MedianOfThreeIsAnElement) {
  Rng rng(4);
  std::vector<Key> keys{5, 1, 9, 3, 7};
  for (int i = 0; i < 20; ++i) {
    const Key p = choose_pivot(keys, rng, PivotRule::median_of_three);
    EXPECT_NE(std::find(keys.begin(), keys.end(), p), keys.end());
  }
}

class Sorting : public ::testing::TestWithParam<Algorithm> {};

TEST_P(Sorting, MatchesReferenceSort) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 100);
  for (int trial = 0; trial < 25; ++trial) {
    const Shape shape = static_cast<Shape>(trial % 5);
    const std::size_t n = rng.uniform(6000);
    auto a = make_keys(n, rng.unit(), shape, rng.next());
    auto expect = a;
    std::sort(expect.begin(), expect.end());
    QuicksortOptions o;
    o.impl = GetParam();
    o.workers = 1 + trial % 4;
    o.pivot = trial % 2 ? PivotRule::median_of_three : PivotRule::uniform;
    o.partition.line = 4;
    o.partition.seed = trial;
    run_quicksort(std::span<Key>(a), o);
    ASSERT_EQ(a, expect) << shape_name(shape) << " n=" << n;
  }
}

INSTANTIATE_TEST_SUITE_P(Quicksort, Sorting, ::testing::ValuesIn(kAlgorithms),
                         [](const auto& info) {
                           std::string s(algorithm_name(info.param));
                           std::replace(s.begin(), s.end(), '-', '_');
                           return s;
                         });

TEST(Quicksort, AllEqualLargeInputTerminates) {
  std::vector<Key> a(1 << 16, 5);
  const RunReport r = run_quicksort(std::span<Key>(a), {});
  EXPECT_EQ(a, std::vector<Key>(1 << 16, 5));
  EXPECT_LE(r.counters.work, 20U << 16);
}

TEST(Quicksort, ParallelModeMatchesSerialModel) {
  auto a = make_keys(1 << 15, 0.5, Shape::duplicates, 3);
  auto b = a;
  QuicksortOptions o;
  o.impl = Algorithm::smoothed_hybrid;
  o.workers = 4;
  o.partition.line = 8;
  RunConfig serial;
  RunConfig parallel;
  parallel.exec.mode = exec::Mode::parallel;
  parallel.exec.workers = 4;
  parallel.exec.grain = 256;
  const RunReport rs = run_quicksort(std::span<Key>(a), o, serial);
  const RunReport rp = run_quicksort(std::span<Key>(b), o, parallel);
  EXPECT_EQ(a, b);
  EXPECT_EQ(rs.counters, rp.counters);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
}

TEST(Quicksort, SiblingCallsAuditClean) {
  auto a = make_keys(1 << 13, 0.5, Shape::random, 8);
  RunConfig cfg;
  cfg.audit = true;
  QuicksortOptions o;
  o.workers = 4;
  const RunReport r = run_quicksort(std::span<Key>(a), o, cfg);
  ASSERT_TRUE(r.audit.has_value());
  EXPECT_TRUE(r.audit->clean());
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
}

}  // namespace
}  // namespace ppart
