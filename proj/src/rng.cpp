#include "ppart/rng.hpp"

namespace ppart {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t Rng::mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) noexcept : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

std::uint64_t Rng::at(std::uint64_t index) const noexcept {
  return mix(key_ + (index + 1) * kGolden);
}

std::uint64_t Rng::next() noexcept { return at(counter_++); }

std::uint64_t Rng::uniform(std::uint64_t bound) noexcept {
  // Lemire's multiply-and-reject.
  std::uint64_t x = next();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::unit() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Rng Rng::split(std::uint64_t stream) const noexcept {
  Rng child(0);
  child.key_ = mix(key_ ^ mix(stream + 0x243f6a8885a308d3ULL));
  return child;
}

}  // namespace ppart
