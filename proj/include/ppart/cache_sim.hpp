#pragma once

// Idealized cache model: fully associative LRU with `capacity_lines` lines of
// `line_elems` words each. A parallel loop is cut into chunks of
// `task_iterations` consecutive iterations; the first chunk continues on the
// spawning task's cache and every later chunk starts cold, as a stolen chunk
// would on another processor. task_iterations == 0 keeps a single cache.

#include <cstddef>
#include <cstdint>
#include <list>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ppart/exec.hpp"

namespace ppart {

struct CacheConfig {
  std::size_t line_elems = 8;
  std::size_t capacity_lines = 512;
  std::size_t task_iterations = 2048;
  std::set<std::string> pinned{"offsets"};
  std::uint64_t access_cap = std::uint64_t{1} << 34;

  void validate() const;
};

struct MissReport {
  std::uint64_t misses = 0;
  std::uint64_t accesses = 0;
  std::uint64_t tasks = 0;  // caches started cold
  std::uint64_t max_task_misses = 0;
  std::uint64_t lines_touched = 0;
};

class TraceOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LruCache {
 public:
  explicit LruCache(std::size_t capacity) : capacity_(capacity) {}
  // Returns true on a miss.
  bool access(std::uint64_t line);

 private:
  std::size_t capacity_;
  std::list<std::uint64_t> order_;  // most recent first
  std::unordered_map<std::uint64_t, std::list<std::uint64_t>::iterator> where_;
};

class CacheSimulator final : public exec::Observer {
 public:
  explicit CacheSimulator(CacheConfig cfg);

  void on_region(const exec::RegionInfo& info) override;
  void on_spawn(exec::TaskId parent, exec::TaskId child, std::size_t iteration) override;
  void on_sync(exec::TaskId parent) override;
  void on_access(exec::TaskId task, exec::RegionId region, std::size_t index, bool write) override;

  MissReport report() const;

 private:
  struct Tracked {
    std::uint64_t first_line = 0;
    std::vector<bool> touched;
  };
  struct Frame {
    bool pushed = false;
  };
  struct Cold {
    LruCache cache;
    std::uint64_t misses = 0;
  };

  void push_cold();
  void pop_cold();

  CacheConfig cfg_;
  std::unordered_map<exec::RegionId, Tracked> regions_;
  std::uint64_t next_line_ = 0;
  std::vector<Frame> frames_;
  std::vector<Cold> caches_;
  MissReport report_;
};

// Offline form: one (task, index) pair per access; each task id gets its own
// cold cache and pinned accesses are ignored.
struct TraceEvent {
  std::uint64_t task = 0;
  std::uint64_t index = 0;
  bool pinned = false;
};

MissReport simulate(const std::vector<TraceEvent>& trace, std::size_t capacity_lines,
                    std::size_t line_elems);

}  // namespace ppart
