#pragma once

// In-place partition with polylogarithmic span and O(log n) task-local memory.
//
// 1. make_successor_heavy pairs the i-th element with the (n-1-i)-th and
//    swaps when the left one is a predecessor and the right one a successor,
//    then recurses on the left half. Afterwards every prefix holds at least
//    a quarter successors.
// 2. The prefix sum of per-block predecessor counts is stored inside the
//    blocks themselves (block_codec), or in an explicit array of chunk counts
//    for the low-space variant.
// 3. reorder partitions the prefix covering 4/5 of the elements
//    recursively, then every later block swaps its predecessors into the
//    successor tail of that prefix, at ranks given by the prefix sum.

#include <algorithm>
#include <cstddef>
#include <cstdint>

#include "ppart/codec.hpp"
#include "ppart/core.hpp"
#include "ppart/prefix_sum.hpp"

namespace ppart {

// Contiguous blocks covering [0, length): block 0 has `head` elements, the
// rest `width`, except that the last block runs to `length`.
struct BlockGrid {
  std::size_t length = 0;
  std::size_t width = 1;
  std::size_t count = 0;
  std::size_t head = 0;

  std::size_t begin(std::size_t j) const noexcept {
    if (j == 0) return 0;
    if (j >= count) return length;
    return head + (j - 1) * width;
  }
  std::size_t end(std::size_t j) const noexcept { return begin(j + 1); }

  // Smallest j >= 1 with begin(j) >= target.
  std::size_t first_reaching(std::size_t target) const noexcept {
    if (target <= head) return 1;
    return 1 + (target - head + width - 1) / width;
  }

  // floor(n / width) blocks, the last one absorbing the remainder.
  static BlockGrid tail_merged(std::size_t n, std::size_t width) {
    return {n, width, n / width, width};
  }
  // ceil(n / width) blocks, the first one possibly short.
  static BlockGrid head_partial(std::size_t n, std::size_t width) {
    const std::size_t count = (n + width - 1) / width;
    return {n, width, count, n - (count - 1) * width};
  }
};

template <class Dec>
void make_successor_heavy(Task& t, const View<Key>& a, const Dec& dec) {
  for (std::size_t len = a.size(); len > 1; len = (len + 1) / 2) {
    t.par_for(len / 2, [&](Task& c, std::size_t i) {
      const std::size_t j = len - 1 - i;
      if (c.decide(dec, c.load(a, i)) && !c.decide(dec, c.load(a, j))) c.swap(a, i, j);
    });
  }
}

namespace detail {

inline View<Key> block_of(const View<Key>& a, const BlockGrid& grid, std::size_t j) {
  return a.sub(grid.begin(j), grid.end(j) - grid.begin(j));
}

inline void implicit_scan(Task& t, const View<Key>& a, const BlockGrid& grid,
                          const BlockCodec& codec, std::size_t stride) {
  const std::size_t active = grid.count / stride;
  if (active < 2) return;
  auto add_into = [&](Task& c, std::size_t from, std::size_t to) {
    const View<Key> src = block_of(a, grid, from);
    const View<Key> dst = block_of(a, grid, to);
    const std::uint64_t sum = decode(c, src, codec, false) + decode(c, dst, codec, false);
    encode(c, dst, sum, codec, false);
  };
  t.par_for(active / 2, [&](Task& c, std::size_t k) {
    add_into(c, (2 * k + 1) * stride - 1, (2 * k + 2) * stride - 1);
  });
  implicit_scan(t, a, grid, codec, stride * 2);
  t.par_for((active - 1) / 2, [&](Task& c, std::size_t k) {
    add_into(c, (2 * k + 2) * stride - 1, (2 * k + 3) * stride - 1);
  });
}

// Inclusive prefix counts held in the blocks themselves.
struct EncodedCounts {
  BlockCodec codec;

  std::uint64_t take(Task& t, const View<Key>& block, std::size_t) const {
    return decode(t, block, codec, true);
  }
  void release(Task& t, const View<Key>& a, const BlockGrid& grid, std::size_t blocks) const {
    t.par_for(blocks, [&](Task& c, std::size_t j) { decode(c, block_of(a, grid, j), codec, true); });
  }
};

// Inclusive prefix counts in an explicit array.
struct ExplicitCounts {
  View<std::uint64_t> prefix;

  std::uint64_t take(Task& t, const View<Key>&, std::size_t j) const { return t.load(prefix, j); }
  void release(Task&, const View<Key>&, const BlockGrid&, std::size_t) const {}
};

}  // namespace detail

// Encodes each block's predecessor count, then turns the counts into
// inclusive prefix sums in place.
template <class Dec>
void implicit_prefix_sum(Task& t, const View<Key>& a, const Dec& dec, const BlockGrid& grid,
                         const BlockCodec& codec) {
  t.par_for(grid.count, [&](Task& c, std::size_t j) {
    const View<Key> block = detail::block_of(a, grid, j);
    std::uint64_t here = 0;
    for (std::size_t e = 0; e < block.size(); ++e) here += c.decide(dec, c.load(block, e));
    encode(c, block, here, codec, true);
  });
  detail::implicit_scan(t, a, grid, codec, 1);
}

// Partitions the first `blocks` blocks of a successor-heavy array whose
// blocks carry inclusive predecessor prefix counts.
template <class Dec, class Counts>
void reorder(Task& t, const View<Key>& a, const Dec& dec, const BlockGrid& grid,
             std::size_t blocks, const Counts& counts) {
  const std::size_t len = grid.begin(blocks);
  const std::size_t cut = grid.first_reaching((4 * len + 4) / 5);
  if (len <= 5 * grid.width || cut >= blocks) {
    counts.release(t, a, grid, blocks);
    serial_partition(t, a.sub(0, len), dec);
    return;
  }
  reorder(t, a, dec, grid, cut, counts);
  t.par_for(blocks - cut, [&](Task& c, std::size_t r) {
    const std::size_t j = cut + r;
    const View<Key> block = detail::block_of(a, grid, j);
    const std::uint64_t through = counts.take(c, block, j);
    const std::size_t m = block.size();
    exec::Buffer<std::uint64_t> ranks(c.runtime(), "ranks", m, exec::RegionKind::scratch);
    const View<std::uint64_t> y = ranks.view();
    c.par_for(m, [&](Task& d, std::size_t e) {
      d.store(y, e, std::uint64_t{d.decide(dec, d.load(block, e))});
    });
    prefix_sum(c, y);
    const std::uint64_t before = through - c.load(y, m - 1);
    c.par_for(m, [&](Task& d, std::size_t e) {
      if (d.decide(dec, d.load(block, e))) d.swap(block, e, a, before + d.load(y, e) - 1);
    });
  });
}

namespace detail {

template <class Dec>
void bps_core(Task& t, const View<Key>& a, const Dec& dec, const BlockCodec& codec) {
  make_successor_heavy(t, a, dec);
  const BlockGrid grid = BlockGrid::tail_merged(a.size(), codec.block_len);
  implicit_prefix_sum(t, a, dec, grid, codec);
  reorder(t, a, dec, grid, grid.count, EncodedCounts{codec});
}

template <class Dec>
void low_space_core(Task& t, const View<Key>& a, const Dec& dec, const View<std::uint64_t>& b,
                    std::size_t chunk, std::size_t kept, bool flip_kept) {
  const std::size_t n = a.size();
  const std::size_t chunks = b.size();
  if (flip_kept) {
    t.par_for(kept, [&](Task& c, std::size_t i) {
      c.store(b, chunks - 1 - i, chunk - c.load(b, i));
    });
  }
  make_successor_heavy(t, a.sub(0, n - n / 2), dec);
  const BlockGrid grid = BlockGrid::head_partial(n, chunk);
  t.par_for(chunks - kept, [&](Task& c, std::size_t j) {
    std::uint64_t here = 0;
    for (std::size_t e = grid.begin(j); e < grid.end(j); ++e) here += c.decide(dec, c.load(a, e));
    c.store(b, j, here);
  });
  prefix_sum(t, b);
  reorder(t, a, dec, grid, grid.count, ExplicitCounts{b});
}

}  // namespace detail

template <class Dec>
std::size_t bps_partition(Task& t, const View<Key>& a, const Dec& dec,
                          CodecMode mode = CodecMode::duplicate_safe) {
  const std::size_t n = a.size();
  const BlockCodec codec = BlockCodec::for_range(std::max<std::size_t>(n, 1), mode);
  if (n <= 5 * codec.block_len) return serial_partition(t, a, dec);
  const std::size_t preds = count_predecessors(t, a, dec);
  if (2 * preds > n) {
    detail::bps_core(t, a.mirrored(), Negated<Dec>{dec}, codec);
  } else {
    detail::bps_core(t, a, dec, codec);
  }
  return preds;
}

// Uses n / chunk words of explicit counts. The first preprocessing level is
// fused with counting, and its counts for the half that later levels leave
// alone are reused whichever way the array ends up oriented.
template <class Dec>
std::size_t low_space_partition(Task& t, const View<Key>& a, const Dec& dec,
                                std::size_t chunk = 64) {
  const std::size_t n = a.size();
  chunk = std::max<std::size_t>(chunk, 1);
  if (n <= 5 * chunk) return serial_partition(t, a, dec);
  const std::size_t half = n / 2;
  const std::size_t kept = half / chunk;
  const std::size_t chunks = (n + chunk - 1) / chunk;
  exec::Buffer<std::uint64_t> counts(t.runtime(), "chunk-counts", chunks);
  const View<std::uint64_t> b = counts.view();
  std::size_t preds = t.par_reduce<std::size_t>(
      (half + chunk - 1) / chunk,
      [&](Task& c, std::size_t it) -> std::size_t {
        const std::size_t lo = it * chunk;
        const std::size_t hi = std::min(half, lo + chunk);
        std::uint64_t left = 0;
        std::uint64_t right = 0;
        std::size_t total = 0;
        for (std::size_t i = lo; i < hi; ++i) {
          const std::size_t j = n - 1 - i;
          bool dx = c.decide(dec, c.load(a, i));
          bool dy = c.decide(dec, c.load(a, j));
          total += std::size_t{dx} + std::size_t{dy};
          if (dx && !dy) {
            c.swap(a, i, j);
            dx = false;
            dy = true;
          }
          left += dx;
          right += dy;
        }
        if (it < kept) {
          c.store(b, it, left);
          c.store(b, chunks - 1 - it, right);
        }
        return total;
      },
      [](std::size_t x, std::size_t y) { return x + y; });
  if (n % 2 == 1) preds += t.decide(dec, t.load(a, half));
  if (2 * preds > n) {
    detail::low_space_core(t, a.mirrored(), Negated<Dec>{dec}, b, chunk, kept, true);
  } else {
    detail::low_space_core(t, a, dec, b, chunk, kept, false);
  }
  return preds;
}

}  // namespace ppart
