#pragma once

// Stores a small integer inside a block of keys by the relative order of
// adjacent pairs: pair j holds bit j, ascending meaning 1.
//
// Distinct mode needs every pair unequal. Duplicate-safe mode uses 2B+1
// pairs: the first encode moves whichever kind of pair (unequal or equal) is
// in the majority to the front. With unequal pairs in front it encodes as in
// distinct mode; with equal pairs in front, pair 0 stays equal as a flag and
// the second key of pairs 1..B is overwritten with the bit, to be restored
// from its partner on decode.

#include <cstddef>
#include <cstdint>

#include "ppart/exec.hpp"
#include "ppart/types.hpp"

namespace ppart {

enum class CodecMode : std::uint8_t { distinct, duplicate_safe };

struct BlockCodec {
  std::uint64_t range_max = 1;  // encodable values are [0, range_max]
  std::size_t bits = 1;
  std::size_t block_len = 2;
  CodecMode mode = CodecMode::duplicate_safe;

  // Shortest block that can hold any value in [0, range_max].
  static BlockCodec for_range(std::uint64_t range_max, CodecMode mode);
  static std::size_t min_block_len(std::uint64_t range_max, CodecMode mode);
  void validate() const;
};

void encode_distinct(exec::Task& t, const exec::View<Key>& block, std::uint64_t value,
                     const BlockCodec& codec);
std::uint64_t decode_distinct(exec::Task& t, const exec::View<Key>& block,
                              const BlockCodec& codec);

// `first_call` arranges the pairs; later calls on the same block must pass false.
void encode_general(exec::Task& t, const exec::View<Key>& block, std::uint64_t value,
                    const BlockCodec& codec, bool first_call);
// With `restore` the overwritten keys are put back and the block holds its
// original multiset again; a later encode_general(first_call = false) still works.
std::uint64_t decode_general(exec::Task& t, const exec::View<Key>& block,
                             const BlockCodec& codec, bool restore = true);

void encode(exec::Task& t, const exec::View<Key>& block, std::uint64_t value,
            const BlockCodec& codec, bool first_call);
std::uint64_t decode(exec::Task& t, const exec::View<Key>& block, const BlockCodec& codec,
                     bool restore);

}  // namespace ppart
