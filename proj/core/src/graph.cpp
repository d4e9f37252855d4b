#include "walksgd/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "walksgd/rng.hpp"

namespace walksgd {

namespace {

void check_connected(int n, const std::vector<std::vector<int>>& adjacency) {
  if (n == 0) throw std::runtime_error("graph: empty graph");
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  if (reached != n) {
    throw std::runtime_error("graph: not connected (" + std::to_string(reached) +
                             " of " + std::to_string(n) + " nodes reachable)");
  }
}

}  // namespace

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
  if (n <= 0) throw std::runtime_error("graph: empty graph");
  std::set<std::pair<int, int>> unique;
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw std::invalid_argument("graph: node id out of range");
    }
    if (i == j) throw std::runtime_error("graph: self-loop rejected");
    unique.emplace(std::min(i, j), std::max(i, j));
  }
  edges_.assign(unique.begin(), unique.end());
  adjacency_.assign(n, {});
  for (auto [i, j] : edges_) {
    adjacency_[i].push_back(j);
    adjacency_[j].push_back(i);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  check_connected(n, adjacency_);
  degrees_.resize(n);
  for (int v = 0; v < n; ++v) degrees_[v] = static_cast<double>(adjacency_[v].size());
  labels_.resize(n);
  for (int v = 0; v < n; ++v) labels_[v] = std::to_string(v);
}

bool Graph::has_edge(int i, int j) const {
  const auto& nbrs = adjacency_[i];
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

void Graph::save_edge_list(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("graph: cannot open " + path + " for writing");
  for (auto [i, j] : edges_) out << labels_[i] << ' ' << labels_[j] << '\n';
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("graph: cannot open " + path);

  Graph g;
  std::vector<std::pair<int, int>> raw_edges;
  std::unordered_map<std::string, int> ids;
  std::string line;
  int line_no = 0;
  auto intern = [&g, &ids](const std::string& label) {
    auto [it, inserted] = ids.emplace(label, static_cast<int>(g.labels_.size()));
    if (inserted) g.labels_.push_back(label);
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;      // blank line
    if (a[0] == '#') continue;     // comment
    if (!(ls >> b) || (ls >> extra)) {
      throw std::runtime_error("graph: malformed line " + std::to_string(line_no) +
                               " in " + path);
    }
    if (a == b) {
      throw std::runtime_error("graph: self-loop at line " + std::to_string(line_no));
    }
    const int ia = intern(a);  // fixed order: ids follow first appearance
    const int ib = intern(b);
    raw_edges.emplace_back(ia, ib);
  }

  const int n = static_cast<int>(g.labels_.size());
  if (n == 0) throw std::runtime_error("graph: empty graph in " + path);

  std::set<std::pair<int, int>> unique;
  for (auto [i, j] : raw_edges) unique.emplace(std::min(i, j), std::max(i, j));
  g.n_ = n;
  g.edges_.assign(unique.begin(), unique.end());
  g.adjacency_.assign(n, {});
  for (auto [i, j] : g.edges_) {
    g.adjacency_[i].push_back(j);
    g.adjacency_[j].push_back(i);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  check_connected(n, g.adjacency_);
  g.degrees_.resize(n);
  for (int v = 0; v < n; ++v) g.degrees_[v] = static_cast<double>(g.adjacency_[v].size());
  return g;
}

Eigen::VectorXd degree_distribution(const Graph& g) {
  return g.degrees() / g.degrees().sum();
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, edges);
}

Graph Graph::cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph Graph::star(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, edges);
}

Graph Graph::random_connected(int n, int extra_edges, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  // random spanning tree: attach each node to a uniformly chosen earlier one
  for (int v = 1; v < n; ++v) {
    edges.emplace_back(static_cast<int>(uniform_below(rng, v)), v);
  }
  std::set<std::pair<int, int>> have(edges.begin(), edges.end());
  const long max_extra = static_cast<long>(n) * (n - 1) / 2 - (n - 1);
  extra_edges = static_cast<int>(std::min<long>(extra_edges, max_extra));
  while (static_cast<int>(have.size()) < n - 1 + extra_edges) {
    const int i = static_cast<int>(uniform_below(rng, n));
    const int j = static_cast<int>(uniform_below(rng, n));
    if (i == j) continue;
    have.emplace(std::min(i, j), std::max(i, j));
  }
  return Graph(n, {have.begin(), have.end()});
}

}  // namespace walksgd
