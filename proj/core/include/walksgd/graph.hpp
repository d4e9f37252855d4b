#ifndef WALKSGD_GRAPH_HPP
#define WALKSGD_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace walksgd {

/// Undirected, connected, simple graph used as a walk substrate.
/// Immutable after construction; safe to share read-only across threads.
class Graph {
 public:
  /// Build from an explicit edge list on nodes 0..n-1.
  /// Duplicate edges collapse; self-loops and disconnected inputs throw.
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  const Eigen::VectorXd& degrees() const { return degrees_; }

  /// Undirected edges as (i, j) with i < j, lexicographically sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_edge(int i, int j) const;

  /// Original file labels, when loaded from an edge list; internal ids otherwise.
  const std::vector<std::string>& labels() const { return labels_; }

  /// Writes the edge list back out using the stored labels.
  void save_edge_list(const std::string& path) const;

  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph path(int n);
  static Graph star(int leaves);
  /// Random connected graph: spanning tree plus `extra_edges` distinct chords.
  static Graph random_connected(int n, int extra_edges, std::uint64_t seed);

 private:
  friend Graph load_edge_list(const std::string& path);
  Graph() = default;

  int n_ = 0;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::pair<int, int>> edges_;
  Eigen::VectorXd degrees_;
  std::vector<std::string> labels_;
};

/// Parse a whitespace-separated edge list ('#' comments and blank lines
/// ignored). Node labels are arbitrary strings; internal ids are assigned
/// densely by first appearance.
Graph load_edge_list(const std::string& path);

/// d / sum(d): the stationary distribution of the simple random walk.
Eigen::VectorXd degree_distribution(const Graph& g);

}  // namespace walksgd

#endif  // WALKSGD_GRAPH_HPP
