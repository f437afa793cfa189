#pragma once

#include <any>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eda/frame.hpp"

namespace eda::graph {

enum class Stage { Reduce, Finalize };

std::string_view to_string(Stage s) noexcept;

struct NodeId {
  std::size_t value = 0;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

/// Structural identity of a node. Equal keys are the same computation.
struct NodeKey {
  std::string op_id;
  std::string params;
  std::vector<std::uint64_t> dep_digests;
  std::uint64_t digest = 0;

  std::string canonical() const;
  friend bool operator==(const NodeKey& a, const NodeKey& b) {
    return a.op_id == b.op_id && a.params == b.params && a.dep_digests == b.dep_digests;
  }
};

NodeKey make_key(std::string op_id, std::string params, std::vector<std::uint64_t> dep_digests);

/// Builds the canonical parameter string: keys sorted, `k=v` joined by ';'.
class Params {
 public:
  Params& add(std::string key, std::string value);
  Params& add(std::string key, std::int64_t value);
  Params& add(std::string key, double value);
  Params& add(std::string key, const std::vector<double>& values);
  Params& add(std::string key, const std::vector<std::string>& values);
  std::string str() const;

 private:
  std::map<std::string, std::string> items_;
};

/// Values of a node's dependencies, in declaration order.
class Inputs {
 public:
  explicit Inputs(std::vector<const std::any*> values) : values_(std::move(values)) {}
  template <class T>
  const T& get(std::size_t i) const {
    return std::any_cast<const T&>(*values_.at(i));
  }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<const std::any*> values_;
};

struct ChunkRef {
  const DataFrame& df;
  std::size_t index;
  std::size_t offset;  // global row index of the chunk's first row
  std::size_t rows;

  const Chunk& chunk(std::size_t column) const { return df.column(column).chunks[index]; }
};

/// Chunk-parallel kernel: `map` runs once per chunk, partials are merged in
/// fixed chunk order, `finish` shrinks the merged partial to the boundary
/// value.
struct ReduceKernel {
  std::function<std::any(const Inputs&, const ChunkRef&)> map;
  std::function<void(std::any& acc, std::any&& next)> merge;
  std::function<std::any(std::any&& merged, const Inputs&, const DataFrame&)> finish;
};

/// Small-data kernel; runs single-threaded after the reduce stage.
struct FinalizeKernel {
  std::function<std::any(const Inputs&, const DataFrame&)> run;
};

template <class Partial, class Map, class Merge, class Finish>
ReduceKernel reduce_kernel(Map map, Merge merge, Finish finish) {
  ReduceKernel k;
  k.map = [map = std::move(map)](const Inputs& in, const ChunkRef& c) -> std::any { return Partial(map(in, c)); };
  k.merge = [merge = std::move(merge)](std::any& acc, std::any&& next) {
    merge(*std::any_cast<Partial>(&acc), std::move(*std::any_cast<Partial>(&next)));
  };
  k.finish = [finish = std::move(finish)](std::any&& merged, const Inputs& in, const DataFrame& df) -> std::any {
    return finish(std::move(*std::any_cast<Partial>(&merged)), in, df);
  };
  return k;
}

template <class Run>
FinalizeKernel finalize_kernel(Run run) {
  return FinalizeKernel{[run = std::move(run)](const Inputs& in, const DataFrame& df) -> std::any {
    return run(in, df);
  }};
}

struct Node {
  NodeKey key;
  Stage stage;
  std::vector<NodeId> deps;
  ReduceKernel reduce;
  FinalizeKernel finalize;
};

/// Deduplicating lazy DAG. Dependencies must already be in the graph, so
/// insertion order is a topological order.
class Graph {
 public:
  NodeId add_reduce(std::string op_id, std::string params, std::vector<NodeId> deps, ReduceKernel kernel);
  NodeId add_finalize(std::string op_id, std::string params, std::vector<NodeId> deps, FinalizeKernel kernel);

  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(id.value); }
  const NodeKey& key(NodeId id) const { return nodes_.at(id.value).key; }
  std::optional<NodeId> find(const NodeKey& key) const;
  std::vector<NodeId> consumers(NodeId id) const;
  std::size_t count(Stage stage) const noexcept;
  std::size_t count_op(std::string_view op_id) const noexcept;
  std::string describe(NodeId id) const;

  /// Adjacency listing, one node per line:
  /// `n<id> <stage> <op>{<params>} deps=[n..] consumers=<k>`.
  std::string dump() const;

 private:
  NodeId add(std::string op_id, std::string params, std::vector<NodeId> deps, Stage stage, ReduceKernel r,
             FinalizeKernel f);
  std::vector<Node> nodes_;
  std::map<std::string, NodeId> index_;
};

struct StageSplit {
  std::vector<NodeId> reduce;
  std::vector<NodeId> finalize;
};

/// Throws StageViolation when a reduce node depends on a finalize node.
StageSplit stage_split(const Graph& g);

struct Progress {
  Stage stage;
  std::size_t completed;
  std::size_t total;
};

struct ExecOptions {
  std::size_t workers = 1;
  std::function<void(const Progress&)> on_progress;
};

/// Outputs of one execution. Skipped nodes carry the reason instead of a value.
class Results {
 public:
  bool has(NodeId id) const { return slots_.at(id.value).value.has_value(); }
  const std::optional<std::string>& skipped(NodeId id) const { return slots_.at(id.value).skip_reason; }
  template <class T>
  const T& get(NodeId id) const {
    return std::any_cast<const T&>(slots_.at(id.value).value);
  }
  const std::any& raw(NodeId id) const { return slots_.at(id.value).value; }
  /// Number of per-chunk map invocations made for a reduce node.
  std::size_t chunk_scans(NodeId id) const { return slots_.at(id.value).chunk_scans; }
  std::size_t size() const noexcept { return slots_.size(); }

 private:
  friend Results execute(const Graph&, const DataFrame&, const ExecOptions&);
  struct Slot {
    std::any value;
    std::optional<std::string> skip_reason;
    std::size_t chunk_scans = 0;
  };
  std::vector<Slot> slots_;
};

/// Number of execute() calls made by this process so far.
std::size_t execution_count() noexcept;

/// Runs the reduce stage chunk-parallel on up to `workers` threads, then the
/// finalize stage on the calling thread. Output is independent of `workers`.
Results execute(const Graph& g, const DataFrame& df, const ExecOptions& options = {});

/// Left-to-right pairwise tree reduction used for every reduce node.
template <class T, class Merge>
T tree_reduce(std::vector<T> parts, Merge&& merge) {
  if (parts.empty()) return T{};
  while (parts.size() > 1) {
    std::vector<T> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i < parts.size(); i += 2) {
      if (i + 1 < parts.size()) merge(parts[i], std::move(parts[i + 1]));
      next.push_back(std::move(parts[i]));
    }
    parts = std::move(next);
  }
  return std::move(parts.front());
}

}  // namespace eda::graph
