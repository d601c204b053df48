#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gendiv {

/// Birth-order identifier of an individual. Ids are dense and strictly
/// increasing, so every parent id is smaller than its child's id.
enum class NodeId : std::uint32_t {};

constexpr std::uint32_t index(NodeId id) noexcept { return static_cast<std::uint32_t>(id); }
constexpr NodeId node_id(std::size_t i) noexcept { return static_cast<NodeId>(i); }

enum class OpKind : std::uint8_t { genesis, mutation, recombination };

std::string_view to_string(OpKind kind);
OpKind parse_op_kind(std::string_view text);

/// Number of parents an operator consumes.
constexpr std::size_t arity(OpKind kind) noexcept {
  switch (kind) {
    case OpKind::genesis: return 0;
    case OpKind::mutation: return 1;
    case OpKind::recombination: return 2;
  }
  return 0;
}

/// Step count along recorded operations; std::nullopt means unreachable.
using Distance = std::optional<std::uint32_t>;

/// Every ancestor of one node (the node included) with its ancestral
/// distance, sorted by id. `depth` is the distance to the earliest ancestor.
struct AncestryProfile {
  NodeId node{};
  std::vector<std::pair<NodeId, std::uint32_t>> ancestors;
  NodeId earliest{};
  std::uint32_t depth = 0;
};

/// Append-only record of every individual ever created and the operator
/// application that produced it.
///
/// Writes (record_birth) must not interleave with queries. Once a batch of
/// births is complete, const queries are safe from any number of threads.
class GenealogyGraph {
 public:
  struct Node {
    OpKind op = OpKind::genesis;
    std::uint32_t generation = 0;
    std::vector<NodeId> parents;
  };

  /// Appends a node and returns its id (one past the current largest).
  /// Throws UnknownNode for an unrecorded parent and InvalidParameter when
  /// the parent count does not match the operator's arity.
  NodeId record_birth(std::span<const NodeId> parents, OpKind op, std::uint32_t generation = 0);

  std::size_t size() const noexcept { return nodes_.size(); }
  bool contains(NodeId id) const noexcept { return index(id) < nodes_.size(); }
  const Node& node(NodeId id) const;
  std::span<const NodeId> parents(NodeId id) const { return node(id).parents; }
  std::span<const NodeId> children(NodeId id) const;

  /// Shortest number of recorded variation steps from `ancestor` down to
  /// `descendant`; nullopt when `ancestor` is not in the descendant's tree.
  Distance adist(NodeId ancestor, NodeId descendant) const;

  /// Common ancestor (each node counts as its own ancestor) minimizing the
  /// smaller of its two ancestral distances; smallest id on ties.
  std::optional<NodeId> latest_common_ancestor(NodeId a, NodeId b) const;

  /// Ancestor at the largest ancestral distance; smallest id on ties.
  NodeId earliest_ancestor(NodeId x) const;

  /// Normalized genealogical distance in [0, 1]. 1 for disjoint ancestry.
  double gdist(NodeId a, NodeId b) const;

  /// Shortest path length in the undirected view of the recorded operations.
  Distance edist_oracle(NodeId a, NodeId b) const;

  /// Reverse breadth-first search from `x` over all of its ancestors.
  AncestryProfile ancestry(NodeId x) const;

  /// One line per node: `id,generation,op_kind[,parent...]`.
  void write_log(std::ostream& out) const;
  static GenealogyGraph read_log(std::istream& in);

 private:
  void require(NodeId id) const;

  std::vector<Node> nodes_;
  std::vector<std::vector<NodeId>> children_;
};

/// Closest shared ancestor of two precomputed profiles (see
/// GenealogyGraph::latest_common_ancestor).
std::optional<NodeId> latest_common_ancestor(const AncestryProfile& a, const AncestryProfile& b);

/// gdist evaluated on precomputed profiles.
double gdist(const AncestryProfile& a, const AncestryProfile& b);

/// Memoizes ancestry profiles per node. Profiles never go stale because the
/// graph is append-only; `retain` drops entries that are no longer needed.
/// Not thread-safe.
class AncestryCache {
 public:
  explicit AncestryCache(const GenealogyGraph& graph) : graph_(&graph) {}

  const AncestryProfile& profile(NodeId x);
  double gdist(NodeId a, NodeId b);
  void retain(std::span<const NodeId> keep);
  std::size_t size() const noexcept { return profiles_.size(); }

 private:
  const GenealogyGraph* graph_;
  std::unordered_map<std::uint32_t, AncestryProfile> profiles_;
};

}  // namespace gendiv
