#include "ppart/exec.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ppart::exec {

Options apply_environment(Options opts) {
  if (const char* v = std::getenv("PPART_SERIAL"); v != nullptr && std::string(v) == "1") {
    opts.mode = Mode::serial;
  }
  return opts;
}

BrentBound brent_bound(const CostCounters& c, unsigned processors) {
  if (processors == 0) throw std::invalid_argument("brent_bound: processor count must be positive");
  const double per = static_cast<double>(c.work) / processors;
  const auto span = static_cast<double>(c.span);
  return {std::max(per, span), per + span};
}

void MemoryMeter::allocate(std::size_t words) noexcept {
  const std::size_t now = current_.fetch_add(words, std::memory_order_relaxed) + words;
  std::size_t seen = peak_.load(std::memory_order_relaxed);
  while (now > seen && !peak_.compare_exchange_weak(seen, now, std::memory_order_relaxed)) {
  }
}

void MemoryMeter::release(std::size_t words) noexcept {
  current_.fetch_sub(words, std::memory_order_relaxed);
}

void MemoryMeter::reset() noexcept {
  current_.store(0, std::memory_order_relaxed);
  peak_.store(0, std::memory_order_relaxed);
}

Runtime::Runtime(Options opts) : opts_(opts) {
  if (opts_.workers == 0) throw std::invalid_argument("Runtime: workers must be positive");
  if (opts_.grain == 0) throw std::invalid_argument("Runtime: grain must be positive");
  if (parallel()) arena_ = std::make_unique<tbb::task_arena>(static_cast<int>(opts_.workers));
}

Runtime::~Runtime() = default;

void Runtime::attach(Observer& obs) {
  if (parallel()) throw std::logic_error("observers require serial mode");
  observers_.push_back(&obs);
}

RegionId Runtime::register_region(std::string_view name, RegionKind kind, std::size_t length) {
  if (kind == RegionKind::scratch) return kScratch;
  const RegionId id = next_region_.fetch_add(1, std::memory_order_relaxed);
  if (!observers_.empty()) {
    const RegionInfo info{id, std::string(name), kind, length};
    for (Observer* o : observers_) o->on_region(info);
  }
  return id;
}

void Runtime::notify_spawn(TaskId parent, TaskId child, std::size_t iteration) {
  for (Observer* o : observers_) o->on_spawn(parent, child, iteration);
}

void Runtime::notify_return(TaskId parent, TaskId child) {
  for (Observer* o : observers_) o->on_return(parent, child);
}

void Runtime::notify_sync(TaskId parent) {
  for (Observer* o : observers_) o->on_sync(parent);
}

void Runtime::notify_access(TaskId task, RegionId region, std::size_t index, bool write) {
  if (region == kScratch) return;
  for (Observer* o : observers_) o->on_access(task, region, index, write);
}

}  // namespace ppart::exec
