#pragma once

#include <cstdint>

namespace ppart {

// Counter-based splittable generator. Every stream is a key; draw i of a
// stream is mix(key + i * golden), so results never depend on thread
// interleaving or on how many draws sibling streams made.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) noexcept;

  std::uint64_t next() noexcept;
  std::uint64_t at(std::uint64_t index) const noexcept;

  // Unbiased integer in [0, bound). bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound) noexcept;
  // Double in [0, 1) with 53 random bits.
  double unit() noexcept;
  bool bernoulli(double p) noexcept { return unit() < p; }

  // Independent child stream; the parent is left untouched.
  Rng split(std::uint64_t stream) const noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t position() const noexcept { return counter_; }

  static std::uint64_t mix(std::uint64_t z) noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ppart
