#pragma once

// Strided and smoothed-striding partitions.
//
// The array is padded to g*s*b positions and cut into s chunks of g lines of
// b elements. Group i takes one line from every chunk: line i of each chunk
// for the strided layout, line (X[j] + i + 1) mod g of chunk j for the
// smoothed layout, with X[j] drawn uniformly from 1..g. Padding positions are
// virtual successors that are never touched. Each group is partitioned
// serially as if its lines were contiguous; afterwards every position before
// the smallest first-successor position holds a predecessor and every
// position from the largest one on holds a successor.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>

#include "ppart/bps.hpp"
#include "ppart/core.hpp"
#include "ppart/rng.hpp"

namespace ppart {

struct GroupLayout {
  std::size_t n = 0;
  std::size_t line = 1;    // b
  std::size_t groups = 1;  // g
  std::size_t chunks = 0;  // s

  std::size_t padded() const noexcept { return groups * chunks * line; }

  // s = ceil(n / (g b)).
  static GroupLayout fit(std::size_t n, std::size_t line, std::size_t groups);
};

// Positions [lo, hi) still unresolved; [0, lo) are predecessors and
// [hi, n) successors.
struct Unresolved {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

struct StridedParams {
  std::size_t line = 1;
  std::size_t groups = 0;  // 0: round(n^(1/3))
};

GroupLayout strided_layout(std::size_t n, const StridedParams& params);

struct SmoothedParams {
  double delta = 0.25;
  double epsilon = 0;      // 0: 1/n
  std::size_t line = 512;
  std::size_t groups = 0;  // 0: the largest g with s > ln(n/epsilon)/delta^2

  void validate() const;
};

// Minimum number of chunks that meets the concentration requirement.
std::size_t smoothed_min_chunks(std::size_t n, double delta, double epsilon);
GroupLayout smoothed_layout(std::size_t n, const SmoothedParams& params);

// 1-indexed position of the first element of group i's j-th line.
std::size_t block_start_index(std::span<const std::uint64_t> offsets, std::size_t groups,
                              std::size_t line, std::size_t i, std::size_t j);

namespace detail {

struct IdentityLines {
  std::size_t operator()(Task&, std::size_t i, std::size_t) const noexcept { return i; }
};

struct OffsetLines {
  View<std::uint64_t> offsets;
  std::size_t groups;
  std::size_t operator()(Task& t, std::size_t i, std::size_t j) const {
    return (t.load(offsets, j) + i + 1) % groups;
  }
};

template <class Dec, class Lines>
Unresolved partition_groups(Task& t, const View<Key>& a, const Dec& dec, const GroupLayout& lay,
                            const Lines& lines) {
  const std::size_t n = a.size();
  const std::size_t b = lay.line;
  const std::size_t g = lay.groups;
  auto leaf = [&](Task& c, std::size_t i) -> Unresolved {
    auto line_start = [&](std::size_t j) { return b * (lines(c, i, j) + j * g); };
    const std::size_t tail = line_start(lay.chunks - 1);
    const std::size_t len = (lay.chunks - 1) * b + (n > tail ? std::min(b, n - tail) : 0);
    struct Cursor {
      std::size_t line = SIZE_MAX;
      std::size_t base = 0;
    };
    auto at = [&](Cursor& cur, std::size_t u) {
      const std::size_t j = u / b;
      if (j != cur.line) {
        cur.line = j;
        cur.base = line_start(j);
      }
      return cur.base + u % b;
    };
    Cursor low;
    Cursor high;
    std::size_t lo = 0;
    std::size_t hi = len;
    for (;;) {
      while (lo < hi && c.decide(dec, c.load(a, at(low, lo)))) ++lo;
      while (lo < hi && !c.decide(dec, c.load(a, at(high, hi - 1)))) --hi;
      if (lo >= hi) break;
      c.swap(a, at(low, lo), at(high, hi - 1));
      ++lo;
      --hi;
    }
    const std::size_t v = lo < len ? at(low, lo) : n;
    return {v, v};
  };
  return t.par_reduce<Unresolved>(g, leaf, [](Unresolved x, Unresolved y) {
    return Unresolved{std::min(x.lo, y.lo), std::max(x.hi, y.hi)};
  });
}

}  // namespace detail

template <class Dec>
Unresolved strided_partial(Task& t, const View<Key>& a, const Dec& dec,
                           const StridedParams& params) {
  if (a.empty()) return {0, 0};
  return detail::partition_groups(t, a, dec, strided_layout(a.size(), params),
                                  detail::IdentityLines{});
}

struct StridedResult {
  std::size_t split = 0;
  std::size_t cleanup = 0;  // length of the serially partitioned middle
};

template <class Dec>
StridedResult strided_partition(Task& t, const View<Key>& a, const Dec& dec,
                                const StridedParams& params) {
  const Unresolved u = strided_partial(t, a, dec, params);
  const std::size_t k = serial_partition(t, a.sub(u.lo, u.hi - u.lo), dec);
  return {u.lo + k, u.hi - u.lo};
}

// One smoothed partial-partition step. With fewer than two groups the whole
// range is partitioned serially and the result is a single split point.
template <class Dec>
Unresolved partial_partition(Task& t, const View<Key>& a, const Dec& dec, const GroupLayout& lay,
                             const Rng& rng) {
  if (a.empty()) return {0, 0};
  if (lay.groups < 2) {
    const std::size_t k = serial_partition(t, a, dec);
    return {k, k};
  }
  exec::Buffer<std::uint64_t> table(t.runtime(), "offsets", lay.chunks, exec::RegionKind::metadata);
  const View<std::uint64_t> x = table.view();
  t.par_for(lay.chunks, [&](Task& c, std::size_t j) {
    c.store(x, j, 1 + rng.split(j).uniform(lay.groups));
  });
  return detail::partition_groups(t, a, dec, lay, detail::OffsetLines{x, lay.groups});
}

template <class Dec>
Unresolved partial_partition(Task& t, const View<Key>& a, const Dec& dec,
                             const SmoothedParams& params, const Rng& rng) {
  params.validate();
  return partial_partition(t, a, dec, smoothed_layout(a.size(), params), rng);
}

struct SmoothedResult {
  std::size_t split = 0;
  std::size_t depth = 0;  // partial steps taken, plus the final serial step
};

inline constexpr double kRecursionDelta = 1.0 / 16;

template <class Dec>
SmoothedResult smoothed_recursive(Task& t, const View<Key>& a, const Dec& dec,
                                  const SmoothedParams& params, const Rng& rng) {
  params.validate();
  const std::size_t n = a.size();
  const double epsilon = params.epsilon > 0 ? params.epsilon : 1.0 / std::max<std::size_t>(n, 2);
  SmoothedResult r;
  std::size_t lo = 0;
  std::size_t hi = n;
  for (;;) {
    const View<Key> part = a.sub(lo, hi - lo);
    SmoothedParams level = params;
    level.epsilon = epsilon;
    if (r.depth > 0) {
      level.delta = kRecursionDelta;
      level.groups = 0;
    }
    const GroupLayout lay = smoothed_layout(part.size(), level);
    ++r.depth;
    if (lay.groups < 2) {
      r.split = lo + serial_partition(t, part, dec);
      return r;
    }
    const Unresolved u = partial_partition(t, part, dec, lay, rng.split(r.depth));
    hi = lo + u.hi;
    lo += u.lo;
    if (lo == hi) {
      r.split = lo;
      return r;
    }
  }
}

template <class Dec>
std::size_t smoothed_hybrid(Task& t, const View<Key>& a, const Dec& dec,
                            const SmoothedParams& params, const Rng& rng,
                            CodecMode mode = CodecMode::duplicate_safe) {
  params.validate();
  SmoothedParams top = params;
  if (top.epsilon <= 0) top.epsilon = 1.0 / std::max<std::size_t>(a.size(), 2);
  const GroupLayout lay = smoothed_layout(a.size(), top);
  if (lay.groups < 2) return bps_partition(t, a, dec, mode);
  const Unresolved u = partial_partition(t, a, dec, lay, rng.split(1));
  if (u.lo == u.hi) return u.lo;
  return u.lo + bps_partition(t, a.sub(u.lo, u.hi - u.lo), dec, mode);
}

}  // namespace ppart
