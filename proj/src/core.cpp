#include "ppart/core.hpp"

#include "ppart/rng.hpp"

namespace ppart {

Fingerprint fingerprint(std::span<const Key> a) {
  Fingerprint f;
  for (Key k : a) {
    const auto u = static_cast<std::uint64_t>(k);
    f.sum += u;
    f.mixed += Rng::mix(u ^ 0x5851f42d4c957f2dULL);
  }
  f.count = a.size();
  return f;
}

}  // namespace ppart
