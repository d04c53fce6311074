#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "ppart/algorithms.hpp"
#include "ppart/cache_sim.hpp"
#include "support.hpp"

namespace ppart {
namespace {

using testing::make_keys;
using testing::Shape;

MissReport stream(std::size_t n, std::size_t passes, CacheConfig cfg) {
  CacheSimulator sim(cfg);
  exec::Runtime rt;
  rt.attach(sim);
  std::vector<Key> data(n);
  const auto v = rt.bind(std::span<Key>(data));
  rt.run([&](Task& t) {
    for (std::size_t p = 0; p < passes; ++p) {
      for (std::size_t i = 0; i < n; ++i) t.load(v, i);
    }
  });
  return sim.report();
}

TEST(Lru, EvictsLeastRecent) {
  LruCache c(2);
  EXPECT_TRUE(c.access(1));
  EXPECT_TRUE(c.access(2));
  EXPECT_FALSE(c.access(1));
  EXPECT_TRUE(c.access(3));
  EXPECT_TRUE(c.access(2));
  EXPECT_FALSE(c.access(3));
}

TEST(CacheSim, SinglePassMissesOncePerLine) {
  CacheConfig cfg;
  cfg.line_elems = 16;
  cfg.capacity_lines = 4;
  cfg.task_iterations = 1 << 20;
  EXPECT_EQ(stream(1024, 1, cfg).misses, 64U);
}

TEST(CacheSim, SecondPassHitsWhenEverythingFits) {
  CacheConfig cfg;
  cfg.line_elems = 16;
  cfg.capacity_lines = 64;
  cfg.task_iterations = 1 << 20;
  const MissReport r = stream(1024, 2, cfg);
  EXPECT_EQ(r.misses, 64U);
  EXPECT_EQ(r.accesses, 2048U);
  cfg.capacity_lines = 63;
  EXPECT_EQ(stream(1024, 2, cfg).misses, 128U);
}

TEST(CacheSim, OfflineMatchesExamples) {
  std::vector<TraceEvent> trace;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::uint64_t i = 0; i < 1024; ++i) trace.push_back({0, i, false});
  }
  EXPECT_EQ(simulate(trace, 64, 16).misses, 64U);
  EXPECT_EQ(simulate(trace, 4, 16).misses, 128U);
  for (auto& e : trace) e.pinned = true;
  EXPECT_EQ(simulate(trace, 4, 16).misses, 0U);
}

TEST(CacheSim, SeparateTasksStartCold) {
  std::vector<TraceEvent> trace;
  for (std::uint64_t task = 0; task < 3; ++task) {
    for (std::uint64_t i = 0; i < 64; ++i) trace.push_back({task, i, false});
  }
  const MissReport r = simulate(trace, 100, 8);
  EXPECT_EQ(r.misses, 24U);
  EXPECT_EQ(r.tasks, 3U);
}

TEST(CacheSim, MoreCapacityNeverMoreMisses) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TraceEvent> trace(2000);
    const std::uint64_t span = 1 + rng.uniform(4000);
    for (auto& e : trace) e = {rng.uniform(3), rng.uniform(span), false};
    std::uint64_t last = UINT64_MAX;
    for (std::size_t cap = 1; cap <= 1024; cap *= 2) {
      const std::uint64_t m = simulate(trace, cap, 8).misses;
      ASSERT_LE(m, last);
      last = m;
    }
  }
}

TEST(CacheSim, MissesCoverTouchedLines) {
  auto a = make_keys(1 << 14, 0.5, Shape::random, 1);
  RunConfig cfg;
  cfg.cache = CacheConfig{};
  for (Algorithm algo : kAlgorithms) {
    auto b = a;
    const RunReport r = run_partition(algo, std::span<Key>(b), LessThan{0}, PartitionOptions{}, cfg);
    ASSERT_TRUE(r.misses.has_value());
    EXPECT_GE(r.misses->misses, r.misses->lines_touched) << algorithm_name(algo);
    EXPECT_GE(r.misses->lines_touched, (1U << 14) / 8) << algorithm_name(algo);
  }
}

TEST(CacheSim, PinnedOffsetsExcluded) {
  const std::size_t n = 1 << 16;
  auto a = make_keys(n, 0.5, Shape::random, 2);
  CacheConfig cc;
  cc.line_elems = 16;
  cc.capacity_lines = 64 + 8;
  exec::Runtime rt;
  CacheSimulator sim(cc);
  rt.attach(sim);
  const auto v = rt.bind(std::span<Key>(a));
  SmoothedParams p;
  p.line = 16;
  p.groups = 64;
  rt.run([&](Task& t) { partial_partition(t, v, LessThan{0}, p, Rng(3)); });
  const MissReport r = sim.report();
  EXPECT_GE(r.misses, n / 16);
  EXPECT_LE(r.misses, n / 16 + 64);
}

TEST(CacheSim, ConfigValidation) {
  CacheConfig cfg;
  cfg.capacity_lines = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.capacity_lines = 4;
  cfg.line_elems = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.line_elems = 4;
  cfg.task_iterations = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(CacheSim, AccessCapAborts) {
  CacheConfig cfg;
  cfg.access_cap = 100;
  EXPECT_THROW(stream(1024, 1, cfg), TraceOverflow);
}

}  // namespace
}  // namespace ppart
