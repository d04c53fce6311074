#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ppart/algorithms.hpp"
#include "ppart/rng.hpp"
#include "ppart/types.hpp"

namespace ppart {

inline void PrintTo(Algorithm a, std::ostream* os) { *os << algorithm_name(a); }

}  // namespace ppart

namespace ppart::testing {

enum class Shape { random, duplicates, all_equal, sorted, reversed };

inline const char* shape_name(Shape s) {
  switch (s) {
    case Shape::random: return "random";
    case Shape::duplicates: return "duplicates";
    case Shape::all_equal: return "all_equal";
    case Shape::sorted: return "sorted";
    case Shape::reversed: return "reversed";
  }
  return "?";
}

// Keys around pivot 0: a key is below the pivot with probability mu.
inline std::vector<Key> make_keys(std::size_t n, double mu, Shape shape, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Key> keys(n);
  for (Key& k : keys) {
    const bool pred = rng.unit() < mu;
    switch (shape) {
      case Shape::duplicates:
        k = pred ? -1 - static_cast<Key>(rng.uniform(3)) : static_cast<Key>(rng.uniform(3));
        break;
      case Shape::all_equal:
        k = mu >= 0.5 ? -1 : 0;
        break;
      default:
        k = pred ? -1 - static_cast<Key>(rng.next() >> 2) : 1 + static_cast<Key>(rng.next() >> 2);
    }
  }
  if (shape == Shape::sorted) std::sort(keys.begin(), keys.end());
  if (shape == Shape::reversed) std::sort(keys.rbegin(), keys.rend());
  return keys;
}

inline ::testing::AssertionResult partitioned_correctly(std::vector<Key> before,
                                                        std::vector<Key> after, Key pivot,
                                                        std::size_t split) {
  const auto expected =
      static_cast<std::size_t>(std::count_if(before.begin(), before.end(), [&](Key k) { return k < pivot; }));
  if (split != expected) {
    return ::testing::AssertionFailure() << "split " << split << " but " << expected << " predecessors";
  }
  for (std::size_t i = 0; i < after.size(); ++i) {
    if ((after[i] < pivot) != (i < split)) {
      return ::testing::AssertionFailure() << "element " << i << " on the wrong side";
    }
  }
  std::sort(before.begin(), before.end());
  std::sort(after.begin(), after.end());
  if (before != after) return ::testing::AssertionFailure() << "multiset changed";
  return ::testing::AssertionSuccess();
}

}  // namespace ppart::testing
