#pragma once

#include <cstddef>
#include <cstdint>

namespace ppart {

using Key = std::int64_t;

// Predecessor test against a pivot: keys strictly below the pivot go first.
struct LessThan {
  Key pivot;
  bool operator()(Key x) const noexcept { return x < pivot; }
};

struct AtMost {
  Key pivot;
  bool operator()(Key x) const noexcept { return x <= pivot; }
};

// Swaps the roles of predecessors and successors.
template <class Dec>
struct Negated {
  Dec inner;
  bool operator()(Key x) const { return !inner(x); }
};

struct PartitionResult {
  std::size_t split = 0;  // number of predecessors; A[0, split) are predecessors
};

}  // namespace ppart
