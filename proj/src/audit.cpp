#include "ppart/audit.hpp"

#include <sstream>
#include <utility>

namespace ppart {

namespace {

const char* kind_name(ConflictKind k) {
  switch (k) {
    case ConflictKind::write_write: return "write-write";
    case ConflictKind::write_read: return "write-read";
    case ConflictKind::read_write: return "read-write";
  }
  return "?";
}

std::string describe(const Conflict& c) {
  std::ostringstream os;
  os << "EREW violation: " << kind_name(c.kind) << " on " << c.region << "[" << c.index
     << "] between task " << c.earlier << " and task " << c.later;
  return os.str();
}

}  // namespace

EREWViolation::EREWViolation(const Conflict& c) : std::runtime_error(describe(c)), conflict_(c) {}

ErewAuditor::ErewAuditor(AuditOptions opts) : opts_(opts) {
  if (opts_.line_elems == 0) opts_.line_elems = 1;
}

void ErewAuditor::ensure(exec::TaskId t) {
  const auto need = static_cast<std::size_t>(t) + 1;
  while (parent_.size() < need) {
    const auto id = static_cast<std::int64_t>(parent_.size());
    parent_.push_back(id);
    rank_.push_back(0);
    in_p_bag_.push_back(0);
    s_bag_.push_back(id);
    p_bag_.push_back(kNone);
    ++report_.tasks;
  }
}

std::int64_t ErewAuditor::find(std::int64_t x) {
  std::int64_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::int64_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

std::int64_t ErewAuditor::unite(std::int64_t a, std::int64_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return a;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return a;
}

bool ErewAuditor::parallel_with_current(std::int64_t earlier) {
  return earlier != kNone && in_p_bag_[find(earlier)] != 0;
}

void ErewAuditor::on_region(const exec::RegionInfo& info) {
  if (info.kind != exec::RegionKind::elements && info.kind != exec::RegionKind::auxiliary) return;
  Shadow& s = shadows_[info.id];
  s.name = info.name;
  s.reader.assign(info.length, kNone);
  s.writer.assign(info.length, kNone);
  s.line_writer.assign((info.length + opts_.line_elems - 1) / opts_.line_elems, kNone);
}

void ErewAuditor::on_spawn(exec::TaskId parent, exec::TaskId child, std::size_t) {
  ensure(std::max(parent, child));
}

void ErewAuditor::on_return(exec::TaskId parent, exec::TaskId child) {
  ensure(std::max(parent, child));
  std::int64_t root = find(child);
  if (p_bag_[parent] != kNone) root = unite(p_bag_[parent], root);
  in_p_bag_[root] = 1;
  p_bag_[parent] = root;
}

void ErewAuditor::on_sync(exec::TaskId parent) {
  ensure(parent);
  if (p_bag_[parent] == kNone) return;
  const std::int64_t root = unite(s_bag_[parent], p_bag_[parent]);
  in_p_bag_[root] = 0;
  s_bag_[parent] = root;
  p_bag_[parent] = kNone;
}

void ErewAuditor::flag(const Shadow& s, std::size_t index, std::int64_t earlier,
                       exec::TaskId later, ConflictKind kind) {
  const Conflict c{s.name, index, earlier, later, kind};
  ++report_.conflict_count;
  if (opts_.throw_on_conflict) throw EREWViolation(c);
  if (report_.conflicts.size() < opts_.keep_conflicts) report_.conflicts.push_back(c);
}

void ErewAuditor::on_access(exec::TaskId task, exec::RegionId region, std::size_t index,
                            bool write) {
  auto it = shadows_.find(region);
  if (it == shadows_.end()) return;
  Shadow& s = it->second;
  ensure(task);
  ++report_.accesses;
  std::int64_t& reader = s.reader[index];
  std::int64_t& writer = s.writer[index];
  if (!write) {
    if (parallel_with_current(writer)) flag(s, index, writer, task, ConflictKind::write_read);
    if (reader != task && parallel_with_current(reader)) {
      ++report_.concurrent_reads;
    } else {
      reader = task;
    }
    return;
  }
  bool element_conflict = false;
  if (parallel_with_current(reader)) {
    flag(s, index, reader, task, ConflictKind::read_write);
    element_conflict = true;
  }
  if (parallel_with_current(writer)) {
    flag(s, index, writer, task, ConflictKind::write_write);
    element_conflict = true;
  }
  writer = task;
  std::int64_t& line_writer = s.line_writer[index / opts_.line_elems];
  if (!element_conflict && line_writer != task && parallel_with_current(line_writer)) {
    ++report_.false_sharing_warnings;
  }
  line_writer = task;
}

}  // namespace ppart
