#ifndef SGTEST_GRAPH_HPP
#define SGTEST_GRAPH_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace sgt {

using NodeId = std::uint32_t;
using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

// Immutable simple undirected graph over nodes 0..n-1, stored CSR-style
// with each neighbor list sorted ascending. Sorted lists are what the
// census kernels rely on for linear-merge intersection, and immutability
// makes a Graph safe to share across Monte Carlo workers.
class Graph {
 public:
  Graph() = default;

  // Builds from (u,v) pairs. Both orientations and duplicates of a pair
  // collapse to one undirected edge. Throws NodeOutOfRange or SelfLoop.
  static Graph from_edges(NodeId n, const EdgeList& edges);

  NodeId node_count() const noexcept { return n_; }
  std::uint64_t edge_count() const noexcept { return m_; }

  NodeId degree(NodeId u) const {
    return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]);
  }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adj_.data() + offsets_[u],
            adj_.data() + offsets_[u + 1]};
  }

  bool has_edge(NodeId u, NodeId v) const;

  // Edges as (u,v) with u < v, sorted lexicographically.
  EdgeList edges() const;

 private:
  NodeId n_ = 0;
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> offsets_;  // n_+1 entries
  std::vector<NodeId> adj_;             // 2*m_ entries
};

// Edge-list text format: first nonempty line is the node count, every
// following nonempty line is "u v"; '#' starts a comment line. Parsing
// errors carry the 1-based line number.
Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const Graph& graph, const std::filesystem::path& path);

}  // namespace sgt

#endif  // SGTEST_GRAPH_HPP
