#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>

#include "ppart/core.hpp"
#include "ppart/prefix_sum.hpp"

namespace ppart {

// Stable out-of-place partition: flag, prefix-sum, scatter, copy back.
// With `run_width` > 1 the prefix sum first reduces runs of that many flags.
template <class Dec>
std::size_t standard_partition(Task& t, const View<Key>& a, const Dec& dec,
                               std::size_t run_width = 64) {
  const std::size_t n = a.size();
  if (n == 0) return 0;
  exec::Runtime& rt = t.runtime();
  exec::Buffer<std::uint64_t> ranks(rt, "ranks", n);
  const View<std::uint64_t> s = ranks.view();
  t.par_for(n, [&](Task& c, std::size_t i) {
    c.store(s, i, std::uint64_t{c.decide(dec, c.load(a, i))});
  });
  blocked_prefix_sum(t, s, run_width);
  const std::uint64_t preds = t.load(s, n - 1);
  exec::Buffer<Key> out(rt, "output", n);
  const View<Key> o = out.view();
  t.par_for(n, [&](Task& c, std::size_t i) {
    const Key x = c.load(a, i);
    const std::uint64_t r = c.load(s, i);
    if (c.decide(dec, x)) {
      c.store(o, r - 1, x);
    } else {
      c.store(o, preds + i - r, x);
    }
  });
  t.par_for(n, [&](Task& c, std::size_t i) { c.store(a, i, c.load(o, i)); });
  return preds;
}

// Stable partition with one count per chunk of `chunk` elements instead of
// one flag per element. Produces the same output as standard_partition.
template <class Dec>
std::size_t medium_partition(Task& t, const View<Key>& a, const Dec& dec,
                             std::size_t chunk = 64) {
  const std::size_t n = a.size();
  if (n == 0) return 0;
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (n + chunk - 1) / chunk;
  exec::Runtime& rt = t.runtime();
  exec::Buffer<std::uint64_t> counts(rt, "chunk-counts", chunks);
  const View<std::uint64_t> b = counts.view();
  exec::for_each(t, chunks, [&](Task& c, std::size_t k) {
    const std::size_t end = std::min(n, (k + 1) * chunk);
    std::uint64_t here = 0;
    for (std::size_t e = k * chunk; e < end; ++e) here += c.decide(dec, c.load(a, e));
    c.store(b, k, here);
  });
  prefix_sum(t, b);
  const std::uint64_t preds = t.load(b, chunks - 1);
  exec::Buffer<Key> out(rt, "output", n);
  const View<Key> o = out.view();
  exec::for_each(t, chunks, [&](Task& c, std::size_t k) {
    std::uint64_t placed = k == 0 ? 0 : c.load(b, k - 1);
    const std::size_t end = std::min(n, (k + 1) * chunk);
    for (std::size_t e = k * chunk; e < end; ++e) {
      const Key x = c.load(a, e);
      if (c.decide(dec, x)) {
        c.store(o, placed++, x);
      } else {
        c.store(o, preds + e - placed, x);
      }
    }
  });
  exec::for_each(t, chunks, [&](Task& c, std::size_t k) {
    const std::size_t end = std::min(n, (k + 1) * chunk);
    for (std::size_t e = k * chunk; e < end; ++e) c.store(a, e, c.load(o, e));
  });
  return preds;
}

}  // namespace ppart
