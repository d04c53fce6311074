#pragma once

// Exclusive-read exclusive-write audit by SP-bags over a serial execution.
//
// Each task owns an S-bag (finished descendants that precede its next
// instruction) and a P-bag (returned children not yet synced). An access
// conflicts with an earlier one exactly when the earlier task sits in a
// P-bag. Only element and auxiliary regions are shadowed; metadata such as
// shared offset tables may be read concurrently.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ppart/exec.hpp"

namespace ppart {

enum class ConflictKind : std::uint8_t { write_write, write_read, read_write };

struct Conflict {
  std::string region;
  std::size_t index = 0;
  exec::TaskId earlier = 0;
  exec::TaskId later = 0;
  ConflictKind kind = ConflictKind::write_write;
};

struct AuditReport {
  std::uint64_t conflict_count = 0;
  std::vector<Conflict> conflicts;  // first few only
  std::uint64_t concurrent_reads = 0;
  std::uint64_t false_sharing_warnings = 0;
  std::uint64_t tasks = 0;
  std::uint64_t accesses = 0;

  bool clean() const noexcept { return conflict_count == 0; }
};

class EREWViolation : public std::runtime_error {
 public:
  explicit EREWViolation(const Conflict& c);
  const Conflict& conflict() const noexcept { return conflict_; }

 private:
  Conflict conflict_;
};

struct AuditOptions {
  bool throw_on_conflict = false;
  std::size_t line_elems = 8;    // granularity of false-sharing warnings
  std::size_t keep_conflicts = 16;
};

class ErewAuditor final : public exec::Observer {
 public:
  explicit ErewAuditor(AuditOptions opts = {});

  void on_region(const exec::RegionInfo& info) override;
  void on_spawn(exec::TaskId parent, exec::TaskId child, std::size_t iteration) override;
  void on_return(exec::TaskId parent, exec::TaskId child) override;
  void on_sync(exec::TaskId parent) override;
  void on_access(exec::TaskId task, exec::RegionId region, std::size_t index, bool write) override;

  const AuditReport& report() const noexcept { return report_; }

 private:
  static constexpr std::int64_t kNone = -1;

  struct Shadow {
    std::string name;
    std::vector<std::int64_t> reader;
    std::vector<std::int64_t> writer;
    std::vector<std::int64_t> line_writer;
  };

  void ensure(exec::TaskId t);
  std::int64_t find(std::int64_t x);
  std::int64_t unite(std::int64_t a, std::int64_t b);
  bool parallel_with_current(std::int64_t earlier);
  void flag(const Shadow& s, std::size_t index, std::int64_t earlier, exec::TaskId later,
            ConflictKind kind);

  AuditOptions opts_;
  AuditReport report_;
  std::unordered_map<exec::RegionId, Shadow> shadows_;
  // union-find over tasks
  std::vector<std::int64_t> parent_;
  std::vector<std::uint32_t> rank_;
  std::vector<std::uint8_t> in_p_bag_;  // valid at roots
  // per task: representative of its S-bag and P-bag
  std::vector<std::int64_t> s_bag_;
  std::vector<std::int64_t> p_bag_;
};

}  // namespace ppart
