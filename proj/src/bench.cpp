#include "ppart/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <new>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ppart {

Input generate_input(std::size_t n, double mu, std::uint64_t seed, bool pred_majority) {
  Input in;
  in.pivot = 0;
  in.keys.resize(n);
  Rng rng(seed);
  std::size_t preds = 0;
  for (Key& k : in.keys) {
    const bool pred = rng.unit() < mu;
    const auto magnitude = static_cast<Key>(rng.next() >> 2) + 1;
    k = pred ? -magnitude : magnitude;
    preds += pred;
  }
  if (pred_majority && 2 * preds < n) {
    for (Key& k : in.keys) k = -k;
  }
  return in;
}

std::string BenchTarget::id() const {
  const std::string name(algorithm_name(algorithm));
  return sort ? "qsort-" + name : name;
}

std::optional<BenchTarget> BenchTarget::parse(std::string_view id) {
  BenchTarget t;
  constexpr std::string_view prefix = "qsort-";
  if (id.substr(0, prefix.size()) == prefix) {
    t.sort = true;
    id.remove_prefix(prefix.size());
  }
  const auto algo = parse_algorithm(id);
  if (!algo) return std::nullopt;
  t.algorithm = *algo;
  return t;
}

namespace {

constexpr Algorithm kBenchAll[] = {Algorithm::high,    Algorithm::medium,       Algorithm::low,
                                   Algorithm::strided, Algorithm::smoothed_rec, Algorithm::smoothed_hybrid};

}  // namespace

std::vector<BenchTarget> resolve_targets(const std::vector<std::string>& ids) {
  std::vector<BenchTarget> out;
  for (const std::string& id : ids) {
    if (id == "all" || id == "qsort-all") {
      for (Algorithm a : kBenchAll) out.push_back({a, id != "all"});
      continue;
    }
    const auto t = BenchTarget::parse(id);
    if (!t) throw std::invalid_argument("unknown algorithm id: " + id);
    out.push_back(*t);
  }
  return out;
}

void BenchConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (!(mu >= 0 && mu <= 1)) throw std::invalid_argument("mu must lie in [0, 1]");
  if (threads.empty() || std::find(threads.begin(), threads.end(), 0U) != threads.end()) {
    throw std::invalid_argument("thread counts must be positive");
  }
  if (sizes.empty()) throw std::invalid_argument("at least one input size is required");
  if (algorithms.empty()) throw std::invalid_argument("at least one algorithm is required");
  if (partition.line == 0 || partition.chunk == 0) {
    throw std::invalid_argument("line and chunk sizes must be positive");
  }
  partition.smoothed().validate();
  cache.validate();
  resolve_targets(algorithms);
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, unsigned trial) {
  return Rng::mix(seed ^ Rng::mix(n * 0x100000001b3ULL + trial));
}

struct Verdicts {
  std::string check = "SKIPPED";
  std::string audit = "SKIPPED";
  std::string note;
  std::optional<MissReport> misses;
};

struct Job {
  BenchTarget target;
  std::span<Key> data;
  Key pivot;
  PartitionOptions popts;
  unsigned workers;
};

RunReport execute(const Job& job, const RunConfig& rc) {
  if (job.target.sort) {
    QuicksortOptions q;
    q.impl = job.target.algorithm;
    q.workers = job.workers;
    q.partition = job.popts;
    return run_quicksort(job.data, q, rc);
  }
  return run_partition(job.target.algorithm, job.data, LessThan{job.pivot}, job.popts, rc);
}

bool output_ok(const BenchTarget& target, std::span<const Key> out, std::span<const Key> in,
               Key pivot, std::size_t split) {
  if (fingerprint(out) != fingerprint(in)) return false;
  if (target.sort) return std::is_sorted(out.begin(), out.end());
  const auto expected = static_cast<std::size_t>(
      std::count_if(in.begin(), in.end(), [&](Key k) { return k < pivot; }));
  return split == expected && is_partitioned(out, LessThan{pivot}, split);
}

double mean_of(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return xs.empty() ? 0 : s / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0;
  const double m = mean_of(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

}  // namespace

BenchResult run_bench(const BenchConfig& cfg) {
  cfg.validate();
  const std::vector<BenchTarget> targets = resolve_targets(cfg.algorithms);
  exec::Options base;
  base.mode = cfg.serial_mode ? exec::Mode::serial : exec::Mode::parallel;
  base = exec::apply_environment(base);

  BenchResult result;
  for (std::size_t n : cfg.sizes) {
    std::vector<Input> inputs;
    inputs.reserve(cfg.trials);
    for (unsigned trial = 0; trial < cfg.trials; ++trial) {
      inputs.push_back(generate_input(n, cfg.mu, trial_seed(cfg.seed, n, trial), cfg.pred_majority));
    }

    // serial baselines: the two-pointer partition and the library sort
    std::vector<double> part_base;
    std::vector<double> sort_base;
    const bool any_sort = std::any_of(targets.begin(), targets.end(), [](auto& t) { return t.sort; });
    const bool any_part = std::any_of(targets.begin(), targets.end(), [](auto& t) { return !t.sort; });
    for (const Input& in : inputs) {
      std::vector<Key> data = in.keys;
      if (any_part) {
        exec::Runtime rt;
        const View<Key> v = rt.bind(std::span<Key>(data));
        const auto start = Clock::now();
        rt.run([&](Task& t) { serial_partition(t, v, LessThan{in.pivot}); });
        part_base.push_back(elapsed_ms(start));
      }
      if (any_sort) {
        data = in.keys;
        const auto start = Clock::now();
        std::sort(data.begin(), data.end());
        sort_base.push_back(elapsed_ms(start));
      }
    }
    const double part_mean = mean_of(part_base);
    const double sort_mean = mean_of(sort_base);

    for (const BenchTarget& target : targets) {
      std::vector<Verdicts> verdicts(cfg.trials);
      for (unsigned trial = 0; trial < cfg.trials; ++trial) {
        const Input& in = inputs[trial];
        PartitionOptions popts = cfg.partition;
        popts.seed = trial_seed(cfg.seed ^ 0xa5a5a5a5ULL, n, trial);
        Verdicts& v = verdicts[trial];
        if (cfg.audit) {
          std::vector<Key> data = in.keys;
          RunConfig rc;
          rc.audit = true;
          try {
            const RunReport r = execute({target, data, in.pivot, popts, cfg.threads.front()}, rc);
            v.audit = r.audit->clean() ? "PASS" : "FAILED";
          } catch (const std::bad_alloc&) {
            v.audit = "FAILED";
            v.note = "audit-out-of-memory";
          }
        }
        if (cfg.simulate_cache) {
          std::vector<Key> data = in.keys;
          RunConfig rc;
          rc.cache = cfg.cache;
          try {
            v.misses = execute({target, data, in.pivot, popts, cfg.threads.front()}, rc).misses;
          } catch (const TraceOverflow&) {
            v.note = "trace-cap";
          } catch (const std::bad_alloc&) {
            v.note = "cache-out-of-memory";
          }
        }
      }

      for (unsigned p : cfg.threads) {
        std::vector<BenchRow> group;
        std::vector<double> times;
        for (unsigned trial = 0; trial < cfg.trials; ++trial) {
          const Input& in = inputs[trial];
          const Verdicts& v = verdicts[trial];
          BenchRow row;
          row.algorithm = target.id();
          row.n = n;
          row.threads = p;
          row.trial = trial;
          row.seed = cfg.seed;
          row.mu = cfg.mu;
          row.line = cfg.partition.line;
          row.delta = cfg.partition.delta;
          row.chunk = cfg.partition.chunk;
          row.audit = v.audit;
          row.note = v.note;
          if (v.misses) {
            row.misses = v.misses->misses;
            row.lines_touched = v.misses->lines_touched;
          }
          PartitionOptions popts = cfg.partition;
          popts.seed = trial_seed(cfg.seed ^ 0xa5a5a5a5ULL, n, trial);
          std::vector<Key> data = in.keys;
          RunConfig rc;
          rc.exec = base;
          rc.exec.workers = p;
          try {
            const auto start = Clock::now();
            const RunReport r = execute({target, data, in.pivot, popts, p}, rc);
            row.wall_ms = elapsed_ms(start);
            row.split = r.split;
            row.counters = r.counters;
            row.brent = exec::brent_bound(r.counters, p);
            row.aux_peak_words = r.peak_aux_words;
            if (cfg.check) row.check = output_ok(target, data, in.keys, in.pivot, r.split) ? "PASS" : "FAILED";
          } catch (const std::bad_alloc&) {
            row.check = "FAILED";
            row.note = row.note.empty() ? "out-of-memory" : row.note + ";out-of-memory";
          }
          if (row.check == "FAILED" || row.audit == "FAILED") result.passed = false;
          times.push_back(row.wall_ms);
          group.push_back(std::move(row));
        }
        const double mean = mean_of(times);
        const double sd = stddev_of(times);
        const double baseline = target.sort ? sort_mean : part_mean;
        for (BenchRow& row : group) {
          row.mean_ms = mean;
          row.stddev_ms = sd;
          row.baseline_ms = baseline;
          row.speedup = mean > 0 ? baseline / mean : 0;
          result.rows.push_back(std::move(row));
        }
      }
    }
  }
  return result;
}

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

template <class T>
std::string opt(const std::optional<T>& x) {
  return x ? std::to_string(*x) : std::string();
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "schema,algorithm,n,threads,trial,seed,mu,b,delta,chunk,split,work,span,parfor_count,"
        "brent_lower,brent_upper,aux_peak_words,misses,lines_touched,check,audit,note,"
        "wall_ms,wall_mean_ms,wall_stddev_ms,baseline_mean_ms,speedup\n";
  for (const BenchRow& r : rows) {
    os << kCsvSchema << ',' << r.algorithm << ',' << r.n << ',' << r.threads << ',' << r.trial << ','
       << r.seed << ',' << fixed(r.mu, 6) << ',' << r.line << ',' << fixed(r.delta, 6) << ','
       << r.chunk << ',' << r.split << ',' << r.counters.work << ',' << r.counters.span << ','
       << r.counters.parfor_count << ',' << fixed(r.brent.lower, 3) << ','
       << fixed(r.brent.upper, 3) << ',' << r.aux_peak_words << ',' << opt(r.misses) << ','
       << opt(r.lines_touched) << ',' << r.check << ',' << r.audit << ',' << r.note << ','
       << fixed(r.wall_ms, 4) << ',' << fixed(r.mean_ms, 4) << ',' << fixed(r.stddev_ms, 4) << ','
       << fixed(r.baseline_ms, 4) << ',' << fixed(r.speedup, 4) << '\n';
  }
}

namespace {

struct Series {
  std::vector<std::string> names;
  // (x key) -> name -> values
  std::map<std::pair<std::size_t, unsigned>, std::map<std::string, std::vector<double>>> points;

  void add(std::pair<std::size_t, unsigned> x, const std::string& name, double y) {
    if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    points[x][name].push_back(y);
  }
};

void write_table(const std::filesystem::path& path, const std::string& x_header, const Series& s,
                 bool with_threads) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << x_header;
  if (with_threads) os << " threads";
  for (const std::string& name : s.names) os << ' ' << name;
  os << '\n';
  for (const auto& [x, by_name] : s.points) {
    os << x.first;
    if (with_threads) os << ' ' << x.second;
    for (const std::string& name : s.names) {
      auto it = by_name.find(name);
      os << ' ' << (it == by_name.end() ? std::string("nan") : fixed(mean_of(it->second), 6));
    }
    os << '\n';
  }
}

std::size_t log2_of(std::size_t n) {
  std::size_t l = 0;
  while ((std::size_t{1} << (l + 1)) <= n) ++l;
  return l;
}

}  // namespace

std::vector<std::filesystem::path> emit_plot_data(const std::vector<BenchRow>& rows,
                                                  const std::filesystem::path& dir,
                                                  std::size_t cache_line_elems) {
  std::filesystem::create_directories(dir);
  Series speedup;
  Series slowdown;
  Series misses;
  Series sorts;
  unsigned fewest = 0;
  for (const BenchRow& r : rows) fewest = fewest == 0 ? r.threads : std::min(fewest, r.threads);
  for (const BenchRow& r : rows) {
    const bool sort = r.algorithm.rfind("qsort-", 0) == 0;
    if (sort) {
      sorts.add({r.n, r.threads}, r.algorithm, r.speedup);
      continue;
    }
    speedup.add({r.n, r.threads}, r.algorithm, r.speedup);
    if (r.threads == fewest && r.speedup > 0) slowdown.add({log2_of(r.n), 0}, r.algorithm, 1.0 / r.speedup);
    if (r.misses && r.threads == fewest) {
      const double lines = static_cast<double>(r.n) / static_cast<double>(cache_line_elems);
      misses.add({log2_of(r.n), 0}, r.algorithm, static_cast<double>(*r.misses) / lines);
    }
  }
  std::vector<std::filesystem::path> out{dir / "speedup_vs_threads.dat", dir / "slowdown_vs_logn.dat",
                                         dir / "misses_vs_n.dat", dir / "quicksort_speedup.dat"};
  write_table(out[0], "n", speedup, true);
  write_table(out[1], "log2n", slowdown, false);
  write_table(out[2], "log2n", misses, false);
  write_table(out[3], "n", sorts, true);
  return out;
}

}  // namespace ppart
