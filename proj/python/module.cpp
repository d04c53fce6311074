#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <span>
#include <stdexcept>
#include <string>

#include "ppart/bench.hpp"

namespace py = pybind11;
using namespace ppart;

namespace {

std::span<Key> keys_of(py::array& arr) {
  if (!py::isinstance<py::array_t<std::int64_t>>(arr) || arr.ndim() != 1) {
    throw py::type_error("expected a one-dimensional int64 array");
  }
  if ((arr.flags() & py::array::c_style) == 0 || !arr.writeable()) {
    throw py::value_error("array must be contiguous and writeable");
  }
  return {static_cast<Key*>(arr.mutable_data()), static_cast<std::size_t>(arr.size())};
}

Algorithm algorithm_of(const std::string& name) {
  const auto a = parse_algorithm(name);
  if (!a) throw py::value_error("unknown algorithm: " + name);
  return *a;
}

RunConfig run_config(const std::string& mode, unsigned workers, bool audit,
                     std::size_t cache_lines, std::size_t cache_line_elems) {
  RunConfig rc;
  if (mode == "parallel") {
    rc.exec.mode = exec::Mode::parallel;
  } else if (mode != "serial") {
    throw py::value_error("mode must be 'serial' or 'parallel'");
  }
  rc.exec.workers = workers;
  rc.exec = exec::apply_environment(rc.exec);
  rc.audit = audit;
  if (cache_lines > 0) {
    CacheConfig cc;
    cc.capacity_lines = cache_lines;
    cc.line_elems = cache_line_elems;
    rc.cache = cc;
  }
  return rc;
}

py::dict report_dict(const RunReport& r) {
  py::dict d;
  d["split"] = r.split;
  d["work"] = r.counters.work;
  d["span"] = r.counters.span;
  d["parfor_count"] = r.counters.parfor_count;
  d["aux_peak_words"] = r.peak_aux_words;
  if (r.audit) {
    d["audit_conflicts"] = r.audit->conflict_count;
    d["false_sharing_warnings"] = r.audit->false_sharing_warnings;
  }
  if (r.misses) {
    d["misses"] = r.misses->misses;
    d["lines_touched"] = r.misses->lines_touched;
  }
  return d;
}

BlockCodec codec_for(std::uint64_t range_max, bool duplicate_safe) {
  return BlockCodec::for_range(range_max,
                               duplicate_safe ? CodecMode::duplicate_safe : CodecMode::distinct);
}

}  // namespace

PYBIND11_MODULE(_ppart, m) {
  m.doc() = "In-place parallel partition algorithms with work/span and cache models";

  m.def("algorithms", [] {
    py::list out;
    for (Algorithm a : kAlgorithms) out.append(std::string(algorithm_name(a)));
    return out;
  });

  m.def(
      "partition",
      [](py::array keys, Key pivot, const std::string& algorithm, std::size_t chunk, std::size_t b,
         double delta, std::size_t groups, std::uint64_t seed, const std::string& mode,
         unsigned workers, bool audit, std::size_t cache_lines, std::size_t cache_line_elems) {
        const std::span<Key> data = keys_of(keys);
        PartitionOptions o;
        o.chunk = chunk;
        o.line = b;
        o.delta = delta;
        o.groups = groups;
        o.seed = seed;
        const RunConfig rc = run_config(mode, workers, audit, cache_lines, cache_line_elems);
        const Algorithm algo = algorithm_of(algorithm);
        RunReport r;
        {
          py::gil_scoped_release unlocked;
          r = run_partition(algo, data, LessThan{pivot}, o, rc);
        }
        return report_dict(r);
      },
      py::arg("keys"), py::arg("pivot"), py::arg("algorithm") = "bps", py::arg("chunk") = 64,
      py::arg("b") = 512, py::arg("delta") = 0.25, py::arg("groups") = 0, py::arg("seed") = 1,
      py::arg("mode") = "serial", py::arg("workers") = 1, py::arg("audit") = false,
      py::arg("cache_lines") = 0, py::arg("cache_line_elems") = 8,
      "Partition keys in place so that keys below the pivot come first.");

  m.def(
      "quicksort",
      [](py::array keys, const std::string& impl, unsigned workers, std::uint64_t seed,
         const std::string& mode) {
        const std::span<Key> data = keys_of(keys);
        QuicksortOptions q;
        q.impl = algorithm_of(impl);
        q.workers = workers;
        q.partition.seed = seed;
        const RunConfig rc = run_config(mode, workers, false, 0, 8);
        RunReport r;
        {
          py::gil_scoped_release unlocked;
          r = run_quicksort(data, q, rc);
        }
        return report_dict(r);
      },
      py::arg("keys"), py::arg("impl") = "low", py::arg("workers") = 1, py::arg("seed") = 1,
      py::arg("mode") = "serial", "Sort keys in place.");

  m.def(
      "count_predecessors",
      [](py::array keys, Key pivot) {
        std::span<Key> data = keys_of(keys);
        exec::Runtime rt;
        const auto v = rt.bind(data);
        std::size_t k = 0;
        rt.run([&](exec::Task& t) { k = count_predecessors(t, v, LessThan{pivot}); });
        return k;
      },
      py::arg("keys"), py::arg("pivot"));

  m.def(
      "is_partitioned",
      [](py::array keys, Key pivot, std::size_t split) {
        const std::span<Key> data = keys_of(keys);
        return is_partitioned(std::span<const Key>(data), LessThan{pivot}, split);
      },
      py::arg("keys"), py::arg("pivot"), py::arg("split"));

  m.def(
      "encode_block",
      [](py::array block, std::uint64_t value, std::uint64_t range_max, bool duplicate_safe) {
        const std::span<Key> data = keys_of(block);
        const BlockCodec codec = codec_for(range_max, duplicate_safe);
        exec::Runtime rt;
        const auto v = rt.bind(data);
        rt.run([&](exec::Task& t) { encode(t, v, value, codec, true); });
      },
      py::arg("block"), py::arg("value"), py::arg("range_max"), py::arg("duplicate_safe") = true);

  m.def(
      "decode_block",
      [](py::array block, std::uint64_t range_max, bool duplicate_safe) {
        const std::span<Key> data = keys_of(block);
        const BlockCodec codec = codec_for(range_max, duplicate_safe);
        exec::Runtime rt;
        const auto v = rt.bind(data);
        std::uint64_t value = 0;
        rt.run([&](exec::Task& t) { value = decode(t, v, codec, true); });
        return value;
      },
      py::arg("block"), py::arg("range_max"), py::arg("duplicate_safe") = true);

  m.def("block_length", [](std::uint64_t range_max, bool duplicate_safe) {
    return codec_for(range_max, duplicate_safe).block_len;
  }, py::arg("range_max"), py::arg("duplicate_safe") = true);

  m.def(
      "block_start_index",
      [](const std::vector<std::uint64_t>& offsets, std::size_t groups, std::size_t line, std::size_t i,
         std::size_t j) { return block_start_index(offsets, groups, line, i, j); },
      py::arg("offsets"), py::arg("groups"),
        py::arg("line"), py::arg("i"), py::arg("j"));

  m.def(
      "brent_bound",
      [](std::uint64_t work, std::uint64_t span, unsigned p) {
        const auto b = exec::brent_bound({work, span, 0}, p);
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("work"), py::arg("span"), py::arg("processors"));

  m.def(
      "generate_input",
      [](std::size_t n, double mu, std::uint64_t seed, bool pred_majority) {
        Input in = generate_input(n, mu, seed, pred_majority);
        py::array_t<std::int64_t> out(static_cast<py::ssize_t>(n));
        std::copy(in.keys.begin(), in.keys.end(), out.mutable_data());
        return py::make_tuple(out, in.pivot);
      },
      py::arg("n"), py::arg("mu") = 0.5, py::arg("seed") = 1, py::arg("pred_majority") = false);
}
