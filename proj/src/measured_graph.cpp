#include "poincarekit/measured_graph.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "poincarekit/errors.hpp"

namespace poincarekit {

MeasuredGraph::MeasuredGraph(std::vector<std::vector<int>> adjacency,
                             Eigen::VectorXd measure, std::vector<std::string> labels)
    : adjacency_(std::move(adjacency)), measure_(std::move(measure)),
      labels_(std::move(labels)) {
  const int n = static_cast<int>(adjacency_.size());
  if (n <= 0) throw InputError("MeasuredGraph: vertex count must be positive");
  if (measure_.size() != n)
    throw InputError("MeasuredGraph: measure size does not match vertex count");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
    throw InputError("MeasuredGraph: label count does not match vertex count");
  for (int v = 0; v < n; ++v) {
    if (!(measure_[v] > 0.0))
      throw InputError("MeasuredGraph: measure must be strictly positive at vertex " +
                       std::to_string(v));
  }
  std::size_t half_edges = 0;
  for (int v = 0; v < n; ++v) {
    auto& nbrs = adjacency_[v];
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
      throw InputError("MeasuredGraph: parallel edge at vertex " + std::to_string(v));
    for (int w : nbrs) {
      if (w < 0 || w >= n)
        throw InputError("MeasuredGraph: neighbor id out of range at vertex " +
                         std::to_string(v));
      if (w == v)
        throw InputError("MeasuredGraph: self-loop at vertex " + std::to_string(v));
    }
    half_edges += nbrs.size();
  }
  for (int v = 0; v < n; ++v) {
    for (int w : adjacency_[v]) {
      if (!std::binary_search(adjacency_[w].begin(), adjacency_[w].end(), v))
        throw InputError("MeasuredGraph: adjacency not symmetric between " +
                         std::to_string(v) + " and " + std::to_string(w));
    }
  }
  edge_count_ = half_edges / 2;

  // connectivity
  std::vector<int> stack{0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw InputError("MeasuredGraph: graph is not connected");
}

MeasuredGraph MeasuredGraph::from_edges(int vertex_count,
                                        const std::vector<std::pair<int, int>>& edges,
                                        Eigen::VectorXd measure,
                                        std::vector<std::string> labels) {
  if (vertex_count <= 0) throw InputError("from_edges: vertex count must be positive");
  std::set<std::pair<int, int>> dedup;
  std::vector<std::vector<int>> adj(vertex_count);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= vertex_count || b < 0 || b >= vertex_count)
      throw InputError("from_edges: edge endpoint out of range");
    if (a == b) throw InputError("from_edges: self-loop not allowed");
    auto key = std::minmax(a, b);
    if (!dedup.insert(key).second) continue; // collapse duplicates
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return MeasuredGraph(std::move(adj), std::move(measure), std::move(labels));
}

const std::vector<int>& MeasuredGraph::neighbors(int v) const {
  check_vertex(v);
  return adjacency_[v];
}

double MeasuredGraph::measure(int v) const {
  check_vertex(v);
  return measure_[v];
}

const std::string& MeasuredGraph::label(int v) const {
  check_vertex(v);
  static const std::string empty;
  return labels_.empty() ? empty : labels_[v];
}

void MeasuredGraph::check_vertex(int v) const {
  if (v < 0 || v >= vertex_count())
    throw InputError("unknown vertex id " + std::to_string(v));
}

MeasuredGraph make_path(int n, double measure) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return MeasuredGraph::from_edges(n, edges, Eigen::VectorXd::Constant(n, measure));
}

MeasuredGraph make_cycle(int n, double measure) {
  if (n < 3) throw InputError("make_cycle: need at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return MeasuredGraph::from_edges(n, edges, Eigen::VectorXd::Constant(n, measure));
}

MeasuredGraph make_grid(int rows, int cols, double measure) {
  if (rows <= 0 || cols <= 0) throw InputError("make_grid: dimensions must be positive");
  std::vector<std::pair<int, int>> edges;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return MeasuredGraph::from_edges(rows * cols, edges,
                                   Eigen::VectorXd::Constant(rows * cols, measure));
}

MeasuredGraph make_complete(int n, double measure) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return MeasuredGraph::from_edges(n, edges, Eigen::VectorXd::Constant(n, measure));
}

} // namespace poincarekit
