#include "ppart/algorithms.hpp"

namespace ppart {

std::string_view algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::serial: return "serial";
    case Algorithm::high: return "high";
    case Algorithm::medium: return "medium";
    case Algorithm::low: return "low";
    case Algorithm::bps: return "bps";
    case Algorithm::strided: return "strided";
    case Algorithm::smoothed_rec: return "smoothed-rec";
    case Algorithm::smoothed_hybrid: return "smoothed-hybrid";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (Algorithm a : kAlgorithms) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

}  // namespace ppart
