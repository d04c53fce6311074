#include "ppart/codec.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace ppart {

using exec::Task;
using exec::View;
using u64 = std::uint64_t;

std::size_t BlockCodec::min_block_len(u64 range_max, CodecMode mode) {
  const auto bits = static_cast<std::size_t>(std::bit_width(std::max<u64>(range_max, 1)));
  return mode == CodecMode::distinct ? 2 * bits : 4 * bits + 2;
}

BlockCodec BlockCodec::for_range(u64 range_max, CodecMode mode) {
  BlockCodec c;
  c.range_max = std::max<u64>(range_max, 1);
  c.bits = static_cast<std::size_t>(std::bit_width(c.range_max));
  c.block_len = min_block_len(c.range_max, mode);
  c.mode = mode;
  return c;
}

void BlockCodec::validate() const {
  if (range_max == 0) throw std::invalid_argument("codec: value range must be positive");
  if (bits != static_cast<std::size_t>(std::bit_width(range_max))) {
    throw std::invalid_argument("codec: bit count does not match the value range");
  }
  if (block_len < min_block_len(range_max, mode)) {
    throw std::invalid_argument("codec: block of " + std::to_string(block_len) +
                                " keys is too short for values up to " +
                                std::to_string(range_max));
  }
}

namespace {

void check_block(const View<Key>& block, const BlockCodec& codec) {
  if (block.size() < codec.block_len) {
    throw std::invalid_argument("codec: block shorter than the configured length");
  }
}

void check_value(u64 value, const BlockCodec& codec) {
  if (value > codec.range_max) {
    throw std::invalid_argument("codec: value " + std::to_string(value) + " exceeds range " +
                                std::to_string(codec.range_max));
  }
}

void write_pair_order(Task& t, const View<Key>& block, u64 value, std::size_t bits) {
  t.par_for(bits, [&](Task& c, std::size_t j) {
    const Key x = c.load(block, 2 * j);
    const Key y = c.load(block, 2 * j + 1);
    c.ops(1);
    const bool ascending = x < y;
    const bool want = ((value >> j) & 1U) != 0;
    if (ascending != want) c.swap(block, 2 * j, 2 * j + 1);
  });
}

u64 read_pair_order(Task& t, const View<Key>& block, std::size_t bits) {
  return t.par_reduce<u64>(
      bits,
      [&](Task& c, std::size_t j) -> u64 {
        c.ops(1);
        return c.load(block, 2 * j) < c.load(block, 2 * j + 1) ? u64{1} << j : 0;
      },
      [](u64 x, u64 y) { return x | y; });
}

// Moves pairs with the wanted (in)equality to the front.
void gather_pairs(Task& t, const View<Key>& block, std::size_t pairs, bool want_equal) {
  auto wanted = [&](std::size_t p) {
    t.ops(1);
    return (t.load(block, 2 * p) == t.load(block, 2 * p + 1)) == want_equal;
  };
  std::size_t lo = 0;
  std::size_t hi = pairs;
  for (;;) {
    while (lo < hi && wanted(lo)) ++lo;
    while (lo < hi && !wanted(hi - 1)) --hi;
    if (lo >= hi) return;
    t.swap(block, 2 * lo, 2 * (hi - 1));
    t.swap(block, 2 * lo + 1, 2 * (hi - 1) + 1);
    ++lo;
    --hi;
  }
}

}  // namespace

void encode_distinct(Task& t, const View<Key>& block, u64 value, const BlockCodec& codec) {
  check_block(block, codec);
  check_value(value, codec);
  write_pair_order(t, block, value, codec.bits);
}

u64 decode_distinct(Task& t, const View<Key>& block, const BlockCodec& codec) {
  check_block(block, codec);
  return read_pair_order(t, block, codec.bits);
}

void encode_general(Task& t, const View<Key>& block, u64 value, const BlockCodec& codec,
                    bool first_call) {
  check_block(block, codec);
  check_value(value, codec);
  const std::size_t bits = codec.bits;
  if (first_call) {
    const std::size_t pairs = 2 * bits + 1;
    std::size_t unequal = 0;
    for (std::size_t p = 0; p < pairs; ++p) {
      t.ops(1);
      unequal += t.load(block, 2 * p) != t.load(block, 2 * p + 1);
    }
    gather_pairs(t, block, pairs, 2 * unequal < pairs);
  }
  t.ops(1);
  if (t.load(block, 0) != t.load(block, 1)) {
    write_pair_order(t, block, value, bits);
    return;
  }
  t.par_for(bits, [&](Task& c, std::size_t j) {
    c.store(block, 2 * j + 3, static_cast<Key>((value >> j) & 1U));
  });
}

u64 decode_general(Task& t, const View<Key>& block, const BlockCodec& codec, bool restore) {
  check_block(block, codec);
  const std::size_t bits = codec.bits;
  t.ops(1);
  if (t.load(block, 0) != t.load(block, 1)) return read_pair_order(t, block, bits);
  return t.par_reduce<u64>(
      bits,
      [&](Task& c, std::size_t j) -> u64 {
        const Key flag = c.load(block, 2 * j + 3);
        if (restore) c.store(block, 2 * j + 3, c.load(block, 2 * j + 2));
        return flag != 0 ? u64{1} << j : 0;
      },
      [](u64 x, u64 y) { return x | y; });
}

void encode(Task& t, const View<Key>& block, u64 value, const BlockCodec& codec,
            bool first_call) {
  if (codec.mode == CodecMode::distinct) {
    encode_distinct(t, block, value, codec);
  } else {
    encode_general(t, block, value, codec, first_call);
  }
}

u64 decode(Task& t, const View<Key>& block, const BlockCodec& codec, bool restore) {
  return codec.mode == CodecMode::distinct ? decode_distinct(t, block, codec)
                                           : decode_general(t, block, codec, restore);
}

}  // namespace ppart
