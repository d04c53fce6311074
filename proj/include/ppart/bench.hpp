#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ppart/algorithms.hpp"
#include "ppart/quicksort.hpp"

namespace ppart {

struct Input {
  std::vector<Key> keys;
  Key pivot = 0;  // predecessors are keys below the pivot
};

// Each key is independently below the pivot with probability mu and above it
// otherwise. With pred_majority the classes are swapped when successors
// would outnumber predecessors.
Input generate_input(std::size_t n, double mu, std::uint64_t seed, bool pred_majority = false);

// A benchmark target: a partition algorithm, or quicksort over one.
struct BenchTarget {
  Algorithm algorithm = Algorithm::serial;
  bool sort = false;

  std::string id() const;
  static std::optional<BenchTarget> parse(std::string_view id);
};

// Expands "all" (every parallel partition id) and "qsort-all".
std::vector<BenchTarget> resolve_targets(const std::vector<std::string>& ids);

struct BenchConfig {
  std::vector<std::string> algorithms{"all"};
  std::vector<std::size_t> sizes{std::size_t{1} << 20};
  std::vector<unsigned> threads{1};
  unsigned trials = 5;
  std::uint64_t seed = 1;
  double mu = 0.5;
  bool pred_majority = false;
  bool check = true;
  bool audit = false;
  bool simulate_cache = false;
  bool serial_mode = false;
  PartitionOptions partition;
  CacheConfig cache;

  void validate() const;  // throws std::invalid_argument
};

struct BenchRow {
  std::string algorithm;
  std::size_t n = 0;
  unsigned threads = 1;
  unsigned trial = 0;
  std::uint64_t seed = 0;
  double mu = 0;
  std::size_t line = 0;
  double delta = 0;
  std::size_t chunk = 0;
  std::size_t split = 0;
  exec::CostCounters counters;
  exec::BrentBound brent;
  std::size_t aux_peak_words = 0;
  std::optional<std::uint64_t> misses;
  std::optional<std::uint64_t> lines_touched;
  std::string check = "SKIPPED";
  std::string audit = "SKIPPED";
  std::string note;
  // wall-clock, excluded from determinism comparisons
  double wall_ms = 0;
  double mean_ms = 0;
  double stddev_ms = 0;
  double baseline_ms = 0;
  double speedup = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  bool passed = true;
};

BenchResult run_bench(const BenchConfig& cfg);

inline constexpr int kCsvSchema = 1;
// Columns after this many are wall-clock measurements.
inline constexpr std::size_t kDeterministicColumns = 22;

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows);

// Writes speedup_vs_threads.dat, slowdown_vs_logn.dat, misses_vs_n.dat and
// quicksort_speedup.dat into dir. Returns the paths written.
std::vector<std::filesystem::path> emit_plot_data(const std::vector<BenchRow>& rows,
                                                  const std::filesystem::path& dir,
                                                  std::size_t cache_line_elems = 8);

}  // namespace ppart
