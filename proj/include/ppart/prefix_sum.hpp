#pragma once

#include <cstddef>
#include <cstdint>

#include "ppart/exec.hpp"

namespace ppart {

// Inclusive prefix sums in place by pairwise halving. Each level sums
// adjacent pairs into a half-size array, recurses, and expands back.
void prefix_sum(exec::Task& t, const exec::View<std::uint64_t>& d);

// Same result; first reduces runs of `width` entries so that the halving
// levels only see ceil(n / width) values.
void blocked_prefix_sum(exec::Task& t, const exec::View<std::uint64_t>& d, std::size_t width = 64);

}  // namespace ppart
