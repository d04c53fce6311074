#include "ppart/cache_sim.hpp"

#include <algorithm>
#include <unordered_set>

namespace ppart {

void CacheConfig::validate() const {
  if (line_elems == 0) throw std::invalid_argument("cache: line size must be positive");
  if (capacity_lines == 0) throw std::invalid_argument("cache: capacity must be positive");
  if (task_iterations == 0) throw std::invalid_argument("cache: task chunk must be positive");
}

bool LruCache::access(std::uint64_t line) {
  if (!order_.empty() && order_.front() == line) return false;
  auto it = where_.find(line);
  if (it != where_.end()) {
    order_.splice(order_.begin(), order_, it->second);
    return false;
  }
  if (order_.size() == capacity_) {
    where_.erase(order_.back());
    order_.splice(order_.begin(), order_, std::prev(order_.end()));
    order_.front() = line;
  } else {
    order_.push_front(line);
  }
  where_[line] = order_.begin();
  return true;
}

CacheSimulator::CacheSimulator(CacheConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  push_cold();
}

void CacheSimulator::push_cold() {
  caches_.push_back(Cold{LruCache(cfg_.capacity_lines), 0});
  ++report_.tasks;
}

void CacheSimulator::pop_cold() {
  report_.max_task_misses = std::max(report_.max_task_misses, caches_.back().misses);
  caches_.pop_back();
}

void CacheSimulator::on_region(const exec::RegionInfo& info) {
  if (info.kind == exec::RegionKind::scratch || cfg_.pinned.count(info.name) != 0) return;
  Tracked t;
  t.first_line = next_line_;
  const std::size_t lines = (info.length + cfg_.line_elems - 1) / cfg_.line_elems;
  t.touched.assign(lines, false);
  next_line_ += lines + 1;
  regions_[info.id] = std::move(t);
}

void CacheSimulator::on_spawn(exec::TaskId, exec::TaskId, std::size_t iteration) {
  if (iteration == 0) {
    frames_.push_back(Frame{});
    return;
  }
  const std::size_t chunk = cfg_.task_iterations;
  if (chunk == 0 || iteration % chunk != 0) return;
  Frame& f = frames_.back();
  if (f.pushed) pop_cold();
  push_cold();
  f.pushed = true;
}

void CacheSimulator::on_sync(exec::TaskId) {
  if (frames_.empty()) return;
  if (frames_.back().pushed) pop_cold();
  frames_.pop_back();
}

void CacheSimulator::on_access(exec::TaskId, exec::RegionId region, std::size_t index, bool) {
  auto it = regions_.find(region);
  if (it == regions_.end()) return;
  if (++report_.accesses > cfg_.access_cap) {
    throw TraceOverflow("cache simulation exceeded the access cap of " +
                        std::to_string(cfg_.access_cap) + " accesses");
  }
  Tracked& t = it->second;
  const std::size_t local = index / cfg_.line_elems;
  if (!t.touched[local]) {
    t.touched[local] = true;
    ++report_.lines_touched;
  }
  Cold& c = caches_.back();
  if (c.cache.access(t.first_line + local)) {
    ++c.misses;
    ++report_.misses;
  }
}

MissReport CacheSimulator::report() const {
  MissReport r = report_;
  for (const Cold& c : caches_) r.max_task_misses = std::max(r.max_task_misses, c.misses);
  return r;
}

MissReport simulate(const std::vector<TraceEvent>& trace, std::size_t capacity_lines,
                    std::size_t line_elems) {
  CacheConfig cfg;
  cfg.capacity_lines = capacity_lines;
  cfg.line_elems = line_elems;
  cfg.validate();
  MissReport r;
  std::unordered_map<std::uint64_t, std::pair<LruCache, std::uint64_t>> per_task;
  std::unordered_set<std::uint64_t> lines;
  for (const TraceEvent& e : trace) {
    if (e.pinned) continue;
    ++r.accesses;
    const std::uint64_t line = e.index / line_elems;
    lines.insert(line);
    auto [it, fresh] = per_task.try_emplace(e.task, LruCache(capacity_lines), 0);
    if (fresh) ++r.tasks;
    if (it->second.first.access(line)) {
      ++it->second.second;
      ++r.misses;
    }
  }
  for (const auto& kv : per_task) r.max_task_misses = std::max(r.max_task_misses, kv.second.second);
  r.lines_touched = lines.size();
  return r;
}

}  // namespace ppart
