#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "ppart/audit.hpp"
#include "ppart/bps.hpp"
#include "ppart/cache_sim.hpp"
#include "ppart/core.hpp"
#include "ppart/rng.hpp"
#include "ppart/standard.hpp"
#include "ppart/striding.hpp"

namespace ppart {

enum class Algorithm : std::uint8_t {
  serial,
  high,
  medium,
  low,
  bps,
  strided,
  smoothed_rec,
  smoothed_hybrid,
};

inline constexpr std::array<Algorithm, 8> kAlgorithms{
    Algorithm::serial, Algorithm::high,    Algorithm::medium,       Algorithm::low,
    Algorithm::bps,    Algorithm::strided, Algorithm::smoothed_rec, Algorithm::smoothed_hybrid};

std::string_view algorithm_name(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

struct PartitionOptions {
  std::size_t chunk = 64;       // medium and low
  std::size_t prefix_run = 64;  // high: width of the first prefix-sum reduction
  CodecMode codec = CodecMode::duplicate_safe;
  std::size_t line = 512;       // strided and smoothed
  double delta = 0.25;
  double epsilon = 0;
  std::size_t groups = 0;
  std::uint64_t seed = 1;

  SmoothedParams smoothed() const { return {delta, epsilon, line, groups}; }
  StridedParams strided() const { return {line, groups}; }
};

template <class Dec>
std::size_t partition(Task& t, Algorithm algo, const View<Key>& a, const Dec& dec,
                      const PartitionOptions& o, const Rng& rng) {
  switch (algo) {
    case Algorithm::serial: return serial_partition(t, a, dec);
    case Algorithm::high: return standard_partition(t, a, dec, o.prefix_run);
    case Algorithm::medium: return medium_partition(t, a, dec, o.chunk);
    case Algorithm::low: return low_space_partition(t, a, dec, o.chunk);
    case Algorithm::bps: return bps_partition(t, a, dec, o.codec);
    case Algorithm::strided: return strided_partition(t, a, dec, o.strided()).split;
    case Algorithm::smoothed_rec: return smoothed_recursive(t, a, dec, o.smoothed(), rng).split;
    case Algorithm::smoothed_hybrid: return smoothed_hybrid(t, a, dec, o.smoothed(), rng, o.codec);
  }
  return 0;
}

struct RunConfig {
  exec::Options exec;
  bool audit = false;
  AuditOptions audit_options;
  std::optional<CacheConfig> cache;
};

struct RunReport {
  std::size_t split = 0;
  exec::CostCounters counters;
  std::size_t peak_aux_words = 0;
  std::optional<AuditReport> audit;
  std::optional<MissReport> misses;
};

// Runs body(Task&) on `data` bound as the element region, with the auditor
// and cache simulator attached as configured. Observers force serial mode.
template <class Body>
RunReport run_instrumented(std::span<Key> data, const RunConfig& cfg, Body&& body) {
  exec::Options eo = cfg.exec;
  if (cfg.audit || cfg.cache) eo.mode = exec::Mode::serial;
  exec::Runtime rt(eo);
  std::optional<ErewAuditor> auditor;
  std::optional<CacheSimulator> sim;
  if (cfg.audit) rt.attach(auditor.emplace(cfg.audit_options));
  if (cfg.cache) rt.attach(sim.emplace(*cfg.cache));
  const View<Key> v = rt.bind(data);
  RunReport r;
  r.counters = rt.run([&](Task& t) { r.split = body(t, v); });
  r.peak_aux_words = rt.memory().peak();
  if (auditor) r.audit = auditor->report();
  if (sim) r.misses = sim->report();
  return r;
}

template <class Dec>
RunReport run_partition(Algorithm algo, std::span<Key> data, const Dec& dec,
                        const PartitionOptions& o, const RunConfig& cfg = {}) {
  const Rng rng(o.seed);
  return run_instrumented(data, cfg, [&](Task& t, const View<Key>& v) {
    return partition(t, algo, v, dec, o, rng);
  });
}

}  // namespace ppart
