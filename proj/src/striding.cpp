#include "ppart/striding.hpp"

#include <string>

namespace ppart {

GroupLayout GroupLayout::fit(std::size_t n, std::size_t line, std::size_t groups) {
  if (line == 0) throw std::invalid_argument("layout: line size must be positive");
  GroupLayout lay;
  lay.n = n;
  lay.line = line;
  lay.groups = groups;
  lay.chunks = groups == 0 ? 0 : (n + groups * line - 1) / (groups * line);
  return lay;
}

GroupLayout strided_layout(std::size_t n, const StridedParams& params) {
  std::size_t g = params.groups;
  if (g == 0) g = static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(n))));
  g = std::max<std::size_t>(g, 1);
  return GroupLayout::fit(n, params.line, g);
}

void SmoothedParams::validate() const {
  if (!(delta > 0 && delta < 0.5)) {
    throw std::invalid_argument("smoothed: delta must lie in (0, 1/2), got " + std::to_string(delta));
  }
  if (epsilon != 0 && !(epsilon > 0 && epsilon < 0.5)) {
    throw std::invalid_argument("smoothed: epsilon must lie in (0, 1/2)");
  }
  if (line == 0) throw std::invalid_argument("smoothed: line size must be positive");
}

std::size_t smoothed_min_chunks(std::size_t n, double delta, double epsilon) {
  const double bound = std::log(static_cast<double>(n) / epsilon) / (delta * delta);
  return static_cast<std::size_t>(std::floor(bound)) + 1;
}

GroupLayout smoothed_layout(std::size_t n, const SmoothedParams& params) {
  std::size_t g = params.groups;
  if (g == 0 && n > 0) {
    const double epsilon = params.epsilon > 0 ? params.epsilon : 1.0 / std::max<std::size_t>(n, 2);
    g = n / (smoothed_min_chunks(n, params.delta, epsilon) * params.line);
  }
  return GroupLayout::fit(n, params.line, g);
}

std::size_t block_start_index(std::span<const std::uint64_t> offsets, std::size_t groups,
                              std::size_t line, std::size_t i, std::size_t j) {
  if (groups == 0 || line == 0) throw std::invalid_argument("block_start_index: empty layout");
  if (i < 1 || i > groups) throw std::out_of_range("block_start_index: group out of range");
  if (j < 1 || j > offsets.size()) throw std::out_of_range("block_start_index: line out of range");
  return line * ((offsets[j - 1] + i) % groups + (j - 1) * groups) + 1;
}

}  // namespace ppart
