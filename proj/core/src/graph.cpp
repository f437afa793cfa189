#include "eda/graph.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "eda/error.hpp"

namespace eda::graph {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
}

}  // namespace

std::string_view to_string(Stage s) noexcept { return s == Stage::Reduce ? "reduce" : "finalize"; }

std::string NodeKey::canonical() const {
  std::string out = op_id + "{" + params + "}[";
  for (std::size_t i = 0; i < dep_digests.size(); ++i) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%s%016llx", i ? "," : "", static_cast<unsigned long long>(dep_digests[i]));
    out += buf;
  }
  return out + "]";
}

NodeKey make_key(std::string op_id, std::string params, std::vector<std::uint64_t> dep_digests) {
  NodeKey k{std::move(op_id), std::move(params), std::move(dep_digests), 0};
  k.digest = fnv1a(k.canonical());
  return k;
}

Params& Params::add(std::string key, std::string value) {
  items_[std::move(key)] = std::move(value);
  return *this;
}
Params& Params::add(std::string key, std::int64_t value) { return add(std::move(key), std::to_string(value)); }
Params& Params::add(std::string key, double value) { return add(std::move(key), format_double(value)); }
Params& Params::add(std::string key, const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + format_double(values[i]);
  return add(std::move(key), "[" + s + "]");
}
Params& Params::add(std::string key, const std::vector<std::string>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + values[i];
  return add(std::move(key), "[" + s + "]");
}

std::string Params::str() const {
  std::string out;
  for (const auto& [k, v] : items_) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

NodeId Graph::add(std::string op_id, std::string params, std::vector<NodeId> deps, Stage stage, ReduceKernel r,
                  FinalizeKernel f) {
  std::vector<std::uint64_t> digests;
  for (auto d : deps) {
    if (d.value >= nodes_.size()) throw CycleDetected("dependency n" + std::to_string(d.value) + " is not in the graph");
    digests.push_back(nodes_[d.value].key.digest);
  }
  auto key = make_key(std::move(op_id), std::move(params), std::move(digests));
  const auto canonical = key.canonical();
  if (auto it = index_.find(canonical); it != index_.end()) return it->second;
  const NodeId id{nodes_.size()};
  nodes_.push_back(Node{std::move(key), stage, std::move(deps), std::move(r), std::move(f)});
  index_.emplace(canonical, id);
  return id;
}

NodeId Graph::add_reduce(std::string op_id, std::string params, std::vector<NodeId> deps, ReduceKernel kernel) {
  return add(std::move(op_id), std::move(params), std::move(deps), Stage::Reduce, std::move(kernel), {});
}

NodeId Graph::add_finalize(std::string op_id, std::string params, std::vector<NodeId> deps, FinalizeKernel kernel) {
  return add(std::move(op_id), std::move(params), std::move(deps), Stage::Finalize, {}, std::move(kernel));
}

std::optional<NodeId> Graph::find(const NodeKey& key) const {
  if (auto it = index_.find(key.canonical()); it != index_.end()) return it->second;
  return std::nullopt;
}

std::vector<NodeId> Graph::consumers(NodeId id) const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (std::find(nodes_[i].deps.begin(), nodes_[i].deps.end(), id) != nodes_[i].deps.end()) out.push_back({i});
  return out;
}

std::size_t Graph::count(Stage stage) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [&](const Node& n) { return n.stage == stage; }));
}

std::size_t Graph::count_op(std::string_view op_id) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [&](const Node& n) { return n.key.op_id == op_id; }));
}

std::string Graph::describe(NodeId id) const {
  const auto& k = node(id).key;
  return "n" + std::to_string(id.value) + " " + k.op_id + "{" + k.params + "}";
}

std::string Graph::dump() const {
  std::ostringstream out;
  out << "# nodes=" << nodes_.size() << " reduce=" << count(Stage::Reduce) << " finalize=" << count(Stage::Finalize)
      << "\n";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    out << "n" << i << " " << to_string(n.stage) << " " << n.key.op_id << "{" << n.key.params << "} deps=[";
    for (std::size_t d = 0; d < n.deps.size(); ++d) out << (d ? "," : "") << "n" << n.deps[d].value;
    out << "] consumers=" << consumers({i}).size() << "\n";
  }
  return out.str();
}

StageSplit stage_split(const Graph& g) {
  StageSplit split;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& n = g.node({i});
    if (n.stage == Stage::Reduce) {
      for (auto d : n.deps)
        if (g.node(d).stage == Stage::Finalize)
          throw StageViolation("reduce node " + g.describe({i}) + " depends on finalize node " + g.describe(d));
      split.reduce.push_back({i});
    } else {
      split.finalize.push_back({i});
    }
  }
  return split;
}

namespace {
std::atomic<std::size_t> executions{0};
}  // namespace

std::size_t execution_count() noexcept { return executions.load(); }

Results execute(const Graph& g, const DataFrame& df, const ExecOptions& options) {
  executions.fetch_add(1);
  const auto split = stage_split(g);
  Results results;
  results.slots_.resize(g.size());
  auto& slots = results.slots_;

  const auto dep_skip = [&](const Node& n) -> std::optional<std::string> {
    for (auto d : n.deps)
      if (slots[d.value].skip_reason) return slots[d.value].skip_reason;
    return std::nullopt;
  };
  const auto inputs_of = [&](const Node& n) {
    std::vector<const std::any*> v;
    v.reserve(n.deps.size());
    for (auto d : n.deps) v.push_back(&slots[d.value].value);
    return Inputs(std::move(v));
  };

  // Reduce stage, level by level: a node's level is one past its deepest dependency.
  std::vector<std::size_t> level(g.size(), 0);
  std::size_t max_level = 0;
  for (auto id : split.reduce) {
    for (auto d : g.node(id).deps) level[id.value] = std::max(level[id.value], level[d.value] + 1);
    max_level = std::max(max_level, level[id.value]);
  }

  const std::size_t chunks = df.chunk_count();
  std::size_t completed = 0;
  const auto report = [&](Stage stage, std::size_t total) {
    if (options.on_progress) options.on_progress(Progress{stage, completed, total});
  };

  for (std::size_t lv = 0; lv <= max_level && !split.reduce.empty(); ++lv) {
    std::vector<NodeId> active;
    for (auto id : split.reduce) {
      if (level[id.value] != lv) continue;
      if (auto why = dep_skip(g.node(id))) {
        slots[id.value].skip_reason = why;
        ++completed;
        report(Stage::Reduce, split.reduce.size());
        continue;
      }
      active.push_back(id);
    }
    if (active.empty()) continue;

    std::vector<Inputs> inputs;
    inputs.reserve(active.size());
    for (auto id : active) inputs.push_back(inputs_of(g.node(id)));

    std::vector<std::vector<std::any>> partials(active.size(), std::vector<std::any>(chunks));
    // The first failing chunk wins so the reported error does not depend on timing.
    std::vector<std::exception_ptr> errors(active.size());
    std::vector<std::size_t> error_chunk(active.size(), chunks);
    std::mutex error_mutex;
    const auto record = [&](std::size_t a, std::size_t chunk) {
      std::lock_guard lock(error_mutex);
      if (!errors[a] || chunk < error_chunk[a]) {
        errors[a] = std::current_exception();
        error_chunk[a] = chunk;
      }
    };

    parallel_for(active.size() * chunks, options.workers, [&](std::size_t item) {
      const std::size_t a = item / chunks, c = item % chunks;
      try {
        const ChunkRef ref{df, c, df.chunk_offset(c), df.meta().chunk_row_counts[c]};
        partials[a][c] = g.node(active[a]).reduce.map(inputs[a], ref);
      } catch (...) {
        record(a, c);
      }
    });

    std::vector<std::any> outputs(active.size());
    parallel_for(active.size(), options.workers, [&](std::size_t a) {
      if (errors[a]) return;
      try {
        const auto& kernel = g.node(active[a]).reduce;
        auto merged = tree_reduce(std::move(partials[a]),
                                  [&](std::any& acc, std::any&& next) { kernel.merge(acc, std::move(next)); });
        outputs[a] = kernel.finish(std::move(merged), inputs[a], df);
      } catch (...) {
        record(a, chunks);
      }
    });

    for (std::size_t a = 0; a < active.size(); ++a) {
      auto& slot = slots[active[a].value];
      slot.chunk_scans = chunks;
      if (errors[a]) {
        try {
          std::rethrow_exception(errors[a]);
        } catch (const Skip& s) {
          slot.skip_reason = s.what();
        } catch (const std::exception& e) {
          throw KernelError(g.describe(active[a]), e.what());
        }
      } else {
        slot.value = std::move(outputs[a]);
      }
      ++completed;
      report(Stage::Reduce, split.reduce.size());
    }
  }

  completed = 0;
  for (auto id : split.finalize) {
    const auto& n = g.node(id);
    auto& slot = slots[id.value];
    if (auto why = dep_skip(n)) {
      slot.skip_reason = why;
    } else {
      try {
        slot.value = n.finalize.run(inputs_of(n), df);
      } catch (const Skip& s) {
        slot.skip_reason = s.what();
      } catch (const std::exception& e) {
        throw KernelError(g.describe(id), e.what());
      }
    }
    ++completed;
    report(Stage::Finalize, split.finalize.size());
  }
  return results;
}

}  // namespace eda::graph
