#include "ppart/prefix_sum.hpp"

#include <algorithm>

namespace ppart {

using exec::Buffer;
using exec::RegionKind;
using exec::Task;
using exec::View;
using u64 = std::uint64_t;

namespace {

RegionKind temp_kind(const View<u64>& d) {
  return d.region == exec::kScratch ? RegionKind::scratch : RegionKind::auxiliary;
}

}  // namespace

void prefix_sum(Task& t, const View<u64>& d) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  const std::size_t half = n / 2;
  Buffer<u64> pairs(t.runtime(), "prefix-level", half, temp_kind(d));
  const View<u64> p = pairs.view();
  exec::for_each(t, half, [&](Task& c, std::size_t i) {
    c.store(p, i, c.load(d, 2 * i) + c.load(d, 2 * i + 1));
  });
  prefix_sum(t, p);
  const bool odd = n % 2 == 1;
  exec::for_each(t, half, [&](Task& c, std::size_t i) {
    const u64 through = c.load(p, i);
    const u64 second = c.load(d, 2 * i + 1);
    c.store(d, 2 * i + 1, through);
    c.store(d, 2 * i, through - second);
    if (odd && i + 1 == half) c.store(d, n - 1, through + c.load(d, n - 1));
  });
}

void blocked_prefix_sum(Task& t, const View<u64>& d, std::size_t width) {
  const std::size_t n = d.size();
  if (width <= 1 || n <= width) {
    prefix_sum(t, d);
    return;
  }
  const std::size_t runs = (n + width - 1) / width;
  Buffer<u64> totals(t.runtime(), "prefix-runs", runs, temp_kind(d));
  const View<u64> s = totals.view();
  exec::for_each(t, runs, [&](Task& c, std::size_t k) {
    const std::size_t end = std::min(n, (k + 1) * width);
    u64 sum = 0;
    for (std::size_t e = k * width; e < end; ++e) sum += c.load(d, e);
    c.store(s, k, sum);
  });
  prefix_sum(t, s);
  exec::for_each(t, runs, [&](Task& c, std::size_t k) {
    u64 running = k == 0 ? 0 : c.load(s, k - 1);
    const std::size_t end = std::min(n, (k + 1) * width);
    for (std::size_t e = k * width; e < end; ++e) {
      running += c.load(d, e);
      c.store(d, e, running);
    }
  });
}

}  // namespace ppart
