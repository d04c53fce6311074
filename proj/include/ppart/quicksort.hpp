#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>

#include "ppart/algorithms.hpp"

namespace ppart {

enum class PivotRule : std::uint8_t { uniform, median_of_three };

struct QuicksortOptions {
  Algorithm impl = Algorithm::low;
  unsigned workers = 1;  // subproblems larger than n / (8 workers) use impl
  PivotRule pivot = PivotRule::uniform;
  PartitionOptions partition;
};

namespace detail {

inline std::size_t pivot_index(std::span<const Key> keys, Rng& rng, PivotRule rule) {
  const std::size_t m = keys.size();
  if (m == 0) throw std::invalid_argument("choose_pivot: empty range");
  if (rule == PivotRule::uniform || m < 3) return rng.uniform(m);
  std::size_t x = rng.uniform(m);
  std::size_t y = rng.uniform(m);
  std::size_t z = rng.uniform(m);
  if (keys[x] > keys[y]) std::swap(x, y);
  if (keys[y] > keys[z]) std::swap(y, z);
  if (keys[x] > keys[y]) std::swap(x, y);
  return y;
}

inline std::size_t pivot_index(Task& t, const View<Key>& a, Rng& rng, PivotRule rule) {
  const std::size_t m = a.size();
  if (rule == PivotRule::uniform || m < 3) return rng.uniform(m);
  std::size_t idx[3] = {rng.uniform(m), rng.uniform(m), rng.uniform(m)};
  Key key[3] = {t.load(a, idx[0]), t.load(a, idx[1]), t.load(a, idx[2])};
  t.ops(3);
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i + 1 < 3 - pass; ++i) {
      if (key[i] > key[i + 1]) {
        std::swap(key[i], key[i + 1]);
        std::swap(idx[i], idx[i + 1]);
      }
    }
  }
  return idx[1];
}

template <class Dec>
std::size_t split_with(Task& t, const View<Key>& a, const Dec& dec, bool large,
                       const QuicksortOptions& o, const Rng& rng) {
  return large ? partition(t, o.impl, a, dec, o.partition, rng) : serial_partition(t, a, dec);
}

inline void sort_range(Task& t, const View<Key>& a, Rng rng, std::size_t cutoff,
                       const QuicksortOptions& o) {
  const std::size_t m = a.size();
  if (m <= 1) return;
  const std::size_t p = pivot_index(t, a, rng, o.pivot);
  if (p != m - 1) t.swap(a, p, m - 1);
  const Key pivot = t.load(a, m - 1);
  const bool large = m - 1 > cutoff;
  const std::size_t k = split_with(t, a.sub(0, m - 1), LessThan{pivot}, large, o, rng.split(2));
  if (k != m - 1) t.swap(a, k, m - 1);
  std::size_t right = k + 1;
  // A lopsided split may be a run of keys equal to the pivot; gather them
  // next to it so that they are not sorted again.
  if (16 * k < m && right < m) {
    right += split_with(t, a.sub(right, m - right), AtMost{pivot}, large, o, rng.split(3));
  }
  t.fork2([&](Task& c) { sort_range(c, a.sub(0, k), rng.split(0), cutoff, o); },
          [&](Task& c) { sort_range(c, a.sub(right, m - right), rng.split(1), cutoff, o); });
}

}  // namespace detail

// Uniform random element of a nonempty range, or the median of three
// random elements.
inline Key choose_pivot(std::span<const Key> range, Rng& rng,
                        PivotRule rule = PivotRule::uniform) {
  return range[detail::pivot_index(range, rng, rule)];
}

inline void quicksort(Task& t, const View<Key>& a, const QuicksortOptions& o, const Rng& rng) {
  const std::size_t workers = std::max<std::size_t>(o.workers, 1);
  const std::size_t cutoff = std::max<std::size_t>(a.size() / (8 * workers), 1);
  detail::sort_range(t, a, rng, cutoff, o);
}

inline RunReport run_quicksort(std::span<Key> data, const QuicksortOptions& o,
                               const RunConfig& cfg = {}) {
  const Rng rng(o.partition.seed);
  return run_instrumented(data, cfg, [&](Task& t, const View<Key>& v) {
    quicksort(t, v, o, rng);
    return v.size();
  });
}

}  // namespace ppart
