#pragma once

// Fork-join execution with work/span accounting.
//
// Every construct has one logical shape regardless of how it is executed:
// par_for is a flat region whose span is the slowest iteration plus a
// scheduling charge, fork2 is a two-way region, and par_reduce is a balanced
// binary tree of fork2 regions. Serial mode runs iterations in ascending order
// on the calling thread and is the only mode that accepts observers (the EREW
// auditor and the cache simulator). Parallel mode runs the same shape on a TBB
// arena; counters are identical because they are merged per region.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <tbb/parallel_invoke.h>
#include <tbb/task_arena.h>

#include "ppart/types.hpp"

namespace ppart::exec {

using TaskId = std::int64_t;
using RegionId = std::uint32_t;

// Task-local memory shares this id and is never traced.
inline constexpr RegionId kScratch = 0;

enum class Mode : std::uint8_t { serial, parallel };
enum class SpanCharge : std::uint8_t { constant, log_range };

struct Options {
  Mode mode = Mode::serial;
  unsigned workers = 1;
  SpanCharge charge = SpanCharge::constant;
  std::size_t grain = 2048;
};

// PPART_SERIAL=1 forces serial mode.
Options apply_environment(Options opts);

struct CostCounters {
  std::uint64_t work = 0;
  std::uint64_t span = 0;
  std::uint64_t parfor_count = 0;

  friend bool operator==(const CostCounters&, const CostCounters&) = default;
};

struct BrentBound {
  double lower = 0;
  double upper = 0;
};

// max(W/p, S) <= T_p <= W/p + S
BrentBound brent_bound(const CostCounters& c, unsigned processors);

enum class RegionKind : std::uint8_t { elements, auxiliary, metadata, scratch };

struct RegionInfo {
  RegionId id = kScratch;
  std::string name;
  RegionKind kind = RegionKind::scratch;
  std::size_t length = 0;
};

class Observer {
 public:
  virtual ~Observer() = default;
  virtual void on_region(const RegionInfo&) {}
  virtual void on_spawn(TaskId /*parent*/, TaskId /*child*/, std::size_t /*iteration*/) {}
  virtual void on_return(TaskId /*parent*/, TaskId /*child*/) {}
  virtual void on_sync(TaskId /*parent*/) {}
  virtual void on_access(TaskId /*task*/, RegionId /*region*/, std::size_t /*index*/,
                         bool /*write*/) {}
};

class MemoryMeter {
 public:
  void allocate(std::size_t words) noexcept;
  void release(std::size_t words) noexcept;
  std::size_t current() const noexcept { return current_.load(std::memory_order_relaxed); }
  std::size_t peak() const noexcept { return peak_.load(std::memory_order_relaxed); }
  void reset() noexcept;

 private:
  std::atomic<std::size_t> current_{0};
  std::atomic<std::size_t> peak_{0};
};

// A logical window onto a region. Logical index i maps to physical index
// first + i, or first + length - 1 - i when reversed.
template <class T>
struct View {
  T* base = nullptr;
  std::size_t first = 0;
  std::size_t length = 0;
  RegionId region = kScratch;
  bool reversed = false;

  std::size_t size() const noexcept { return length; }
  bool empty() const noexcept { return length == 0; }

  std::size_t physical(std::size_t i) const noexcept {
    return reversed ? first + (length - 1 - i) : first + i;
  }

  View sub(std::size_t offset, std::size_t count) const noexcept {
    View v = *this;
    v.length = count;
    v.first = reversed ? first + (length - offset - count) : first + offset;
    return v;
  }

  View mirrored() const noexcept {
    View v = *this;
    v.reversed = !reversed;
    return v;
  }
};

class Task;

class Runtime {
 public:
  explicit Runtime(Options opts = {});
  ~Runtime();
  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  const Options& options() const noexcept { return opts_; }
  bool parallel() const noexcept { return opts_.mode == Mode::parallel; }
  bool instrumented() const noexcept { return !observers_.empty(); }

  // Observers see every region registered after they attach. Serial mode only.
  void attach(Observer& obs);

  RegionId register_region(std::string_view name, RegionKind kind, std::size_t length);

  template <class T>
  View<T> bind(std::span<T> data, std::string_view name = "elements",
               RegionKind kind = RegionKind::elements) {
    return View<T>{data.data(), 0, data.size(), register_region(name, kind, data.size()), false};
  }

  MemoryMeter& memory() noexcept { return memory_; }

  // Runs root(Task&) as the root task and returns its counters.
  template <class F>
  CostCounters run(F&& root);

  TaskId next_task_id() noexcept { return next_task_++; }
  void notify_spawn(TaskId parent, TaskId child, std::size_t iteration);
  void notify_return(TaskId parent, TaskId child);
  void notify_sync(TaskId parent);
  void notify_access(TaskId task, RegionId region, std::size_t index, bool write);

 private:
  Options opts_;
  std::vector<Observer*> observers_;
  std::unique_ptr<tbb::task_arena> arena_;
  MemoryMeter memory_;
  std::atomic<RegionId> next_region_{1};
  TaskId next_task_ = 0;
};

// Owned auxiliary array whose size is charged to the runtime's memory meter.
template <class T>
class Buffer {
 public:
  Buffer(Runtime& rt, std::string_view name, std::size_t n,
         RegionKind kind = RegionKind::auxiliary)
      : rt_(&rt), data_(n) {
    region_ = kind == RegionKind::scratch ? kScratch : rt.register_region(name, kind, n);
    rt_->memory().allocate(words());
  }
  ~Buffer() { rt_->memory().release(words()); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;

  View<T> view() noexcept { return View<T>{data_.data(), 0, data_.size(), region_, false}; }
  std::span<T> raw() noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }

 private:
  std::size_t words() const noexcept {
    return (data_.size() * sizeof(T) + sizeof(std::uint64_t) - 1) / sizeof(std::uint64_t);
  }

  Runtime* rt_;
  std::vector<T> data_;
  RegionId region_ = kScratch;
};

class Task {
 public:
  Task(Runtime& rt, TaskId id) noexcept : rt_(&rt), id_(id) {}

  TaskId id() const noexcept { return id_; }
  Runtime& runtime() const noexcept { return *rt_; }
  CostCounters counters() const noexcept { return {work_, span_, parfors_}; }

  // Charges `units` sequential operations to this task.
  void ops(std::uint64_t units) noexcept {
    work_ += units;
    span_ += units;
  }

  template <class T>
  T load(const View<T>& v, std::size_t i) {
    const std::size_t p = v.physical(i);
    if (rt_->instrumented()) rt_->notify_access(id_, v.region, p, false);
    return v.base[p];
  }

  template <class T>
  void store(const View<T>& v, std::size_t i, T x) {
    const std::size_t p = v.physical(i);
    if (rt_->instrumented()) rt_->notify_access(id_, v.region, p, true);
    v.base[p] = x;
    ops(1);
  }

  template <class T>
  void swap(const View<T>& a, std::size_t i, const View<T>& b, std::size_t j) {
    const std::size_t p = a.physical(i);
    const std::size_t q = b.physical(j);
    if (rt_->instrumented()) {
      rt_->notify_access(id_, a.region, p, false);
      rt_->notify_access(id_, b.region, q, false);
      rt_->notify_access(id_, a.region, p, true);
      rt_->notify_access(id_, b.region, q, true);
    }
    std::swap(a.base[p], b.base[q]);
    ops(2);
  }

  template <class T>
  void swap(const View<T>& v, std::size_t i, std::size_t j) {
    swap(v, i, v, j);
  }

  template <class Dec>
  bool decide(const Dec& dec, Key x) {
    ops(1);
    return static_cast<bool>(dec(x));
  }

  // body(Task&, std::size_t) for every i in [0, range).
  template <class Body>
  void par_for(std::size_t range, Body&& body);

  template <class F, class G>
  void fork2(F&& left, G&& right) {
    fork2_impl(rt_->parallel(), std::forward<F>(left), std::forward<G>(right));
  }

  // Balanced binary reduction over leaf(Task&, i) for i in [0, range).
  // range must be positive; a single leaf runs inline.
  template <class T, class Leaf, class Combine>
  T par_reduce(std::size_t range, Leaf&& leaf, Combine&& combine) {
    if (range == 1) return leaf(*this, std::size_t{0});
    return reduce_node<T>(0, range, leaf, combine);
  }

 private:
  struct Joined {
    std::uint64_t work = 0;
    std::uint64_t span = 0;
    std::uint64_t parfors = 0;

    void absorb(const Task& t) noexcept {
      work += t.work_;
      span = std::max(span, t.span_);
      parfors += t.parfors_;
    }
    void merge(const Joined& o) noexcept {
      work += o.work;
      span = std::max(span, o.span);
      parfors += o.parfors;
    }
  };

  std::uint64_t charge(std::size_t range) const noexcept {
    if (rt_->options().charge == SpanCharge::constant) return 1;
    return range <= 1 ? 0 : std::bit_width(range - 1);
  }

  void close_region(const Joined& j, std::size_t range) noexcept {
    work_ += j.work;
    span_ += j.span + charge(range);
    parfors_ += j.parfors + 1;
  }

  TaskId child_id() noexcept { return rt_->instrumented() ? rt_->next_task_id() : 0; }

  template <class Body>
  Joined run_serial(std::size_t lo, std::size_t hi, Body& body) {
    Joined j;
    const bool traced = rt_->instrumented();
    for (std::size_t i = lo; i < hi; ++i) {
      Task child(*rt_, child_id());
      if (traced) rt_->notify_spawn(id_, child.id_, i);
      body(child, i);
      if (traced) rt_->notify_return(id_, child.id_);
      j.absorb(child);
    }
    return j;
  }

  template <class Body>
  Joined run_split(std::size_t lo, std::size_t hi, Body& body) {
    if (hi - lo <= rt_->options().grain) return run_serial(lo, hi, body);
    const std::size_t mid = lo + (hi - lo) / 2;
    Joined a;
    Joined b;
    tbb::parallel_invoke([&] { a = run_split(lo, mid, body); },
                         [&] { b = run_split(mid, hi, body); });
    a.merge(b);
    return a;
  }

  template <class F, class G>
  void fork2_impl(bool concurrent, F&& left, G&& right) {
    Task a(*rt_, child_id());
    Task b(*rt_, child_id());
    if (concurrent) {
      tbb::parallel_invoke([&] { left(a); }, [&] { right(b); });
    } else {
      const bool traced = rt_->instrumented();
      if (traced) rt_->notify_spawn(id_, a.id_, 0);
      left(a);
      if (traced) {
        rt_->notify_return(id_, a.id_);
        rt_->notify_spawn(id_, b.id_, 1);
      }
      right(b);
      if (traced) {
        rt_->notify_return(id_, b.id_);
        rt_->notify_sync(id_);
      }
    }
    Joined j;
    j.absorb(a);
    j.absorb(b);
    close_region(j, 2);
  }

  template <class T, class Leaf, class Combine>
  T reduce_node(std::size_t lo, std::size_t hi, Leaf& leaf, Combine& combine) {
    if (hi - lo == 1) return leaf(*this, lo);
    const std::size_t mid = lo + (hi - lo) / 2;
    T left{};
    T right{};
    fork2_impl(
        rt_->parallel() && hi - lo > rt_->options().grain,
        [&](Task& t) { left = t.reduce_node<T>(lo, mid, leaf, combine); },
        [&](Task& t) { right = t.reduce_node<T>(mid, hi, leaf, combine); });
    ops(1);
    return combine(left, right);
  }

  Runtime* rt_;
  TaskId id_;
  std::uint64_t work_ = 0;
  std::uint64_t span_ = 0;
  std::uint64_t parfors_ = 0;
};

template <class Body>
void Task::par_for(std::size_t range, Body&& body) {
  if (range == 0) return;
  Joined j;
  if (rt_->parallel()) {
    j = run_split(0, range, body);
  } else {
    j = run_serial(0, range, body);
    if (rt_->instrumented()) rt_->notify_sync(id_);
  }
  close_region(j, range);
}

// par_for whose lone iteration, if there is only one, runs in the calling task.
template <class Body>
void for_each(Task& t, std::size_t range, Body&& body) {
  if (range == 1) {
    body(t, std::size_t{0});
  } else {
    t.par_for(range, std::forward<Body>(body));
  }
}

template <class F>
CostCounters Runtime::run(F&& root) {
  Task task(*this, next_task_id());
  if (parallel()) {
    arena_->execute([&] { root(task); });
  } else {
    root(task);
  }
  return task.counters();
}

}  // namespace ppart::exec
