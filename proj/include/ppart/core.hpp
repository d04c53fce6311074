#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "ppart/exec.hpp"
#include "ppart/types.hpp"

namespace ppart {

using exec::Task;
using exec::View;

// Two-pointer in-place partition. Returns the number of predecessors.
template <class Dec>
std::size_t serial_partition(Task& t, const View<Key>& a, const Dec& dec) {
  std::size_t lo = 0;
  std::size_t hi = a.size();
  for (;;) {
    while (lo < hi && t.decide(dec, t.load(a, lo))) ++lo;
    while (lo < hi && !t.decide(dec, t.load(a, hi - 1))) --hi;
    if (lo >= hi) return lo;
    t.swap(a, lo, hi - 1);
    ++lo;
    --hi;
  }
}

template <class Dec>
std::size_t count_predecessors(Task& t, const View<Key>& a, const Dec& dec) {
  if (a.empty()) return 0;
  return t.par_reduce<std::size_t>(
      a.size(), [&](Task& c, std::size_t i) -> std::size_t { return c.decide(dec, c.load(a, i)); },
      [](std::size_t x, std::size_t y) { return x + y; });
}

template <class Dec>
bool is_partitioned(std::span<const Key> a, const Dec& dec, std::size_t split) {
  if (split > a.size()) return false;
  for (std::size_t i = 0; i < split; ++i) {
    if (!dec(a[i])) return false;
  }
  for (std::size_t i = split; i < a.size(); ++i) {
    if (dec(a[i])) return false;
  }
  return true;
}

// Order-independent digest of a multiset of keys.
struct Fingerprint {
  std::uint64_t sum = 0;
  std::uint64_t mixed = 0;
  std::uint64_t count = 0;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(std::span<const Key> a);

}  // namespace ppart
