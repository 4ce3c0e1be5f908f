#include "poincarekit/covering.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "poincarekit/errors.hpp"
#include "poincarekit/mmgraph.hpp"

namespace poincarekit {
namespace covering {

MultiGraph::MultiGraph(int vertex_count, std::vector<std::array<int, 2>> edges,
                       Eigen::VectorXd measure)
    : edges_(std::move(edges)), measure_(std::move(measure)) {
  if (vertex_count <= 0) throw InputError("MultiGraph: vertex count must be positive");
  if (measure_.size() != vertex_count)
    throw InputError("MultiGraph: measure size does not match vertex count");
  for (int v = 0; v < vertex_count; ++v)
    if (!(measure_[v] > 0.0))
      throw InputError("MultiGraph: measure must be strictly positive");
  out_darts_.resize(vertex_count);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto [a, b] = edges_[k];
    if (a < 0 || a >= vertex_count || b < 0 || b >= vertex_count)
      throw InputError("MultiGraph: edge endpoint out of range");
    out_darts_[a].push_back(static_cast<int>(2 * k));
    out_darts_[b].push_back(static_cast<int>(2 * k + 1));
  }
  // connectivity over the support
  std::vector<char> seen(vertex_count, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int d : out_darts_[v]) {
      const int w = dart_head(d);
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != vertex_count) throw InputError("MultiGraph: graph is not connected");
}

double MultiGraph::measure(int v) const {
  if (v < 0 || v >= vertex_count()) throw InputError("MultiGraph: unknown vertex id");
  return measure_[v];
}

int MultiGraph::dart_head(int d) const {
  const auto& e = edges_[d / 2];
  return (d % 2 == 0) ? e[1] : e[0];
}

namespace {

std::vector<std::vector<int>> support_adjacency(const MultiGraph& g) {
  std::vector<std::set<int>> nb(g.vertex_count());
  for (const auto& e : g.edges())
    if (e[0] != e[1]) {
      nb[e[0]].insert(e[1]);
      nb[e[1]].insert(e[0]);
    }
  std::vector<std::vector<int>> adj(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) adj[v].assign(nb[v].begin(), nb[v].end());
  return adj;
}

std::vector<int> support_bfs(const std::vector<std::vector<int>>& adj, int s) {
  std::vector<int> dist(adj.size(), -1);
  std::vector<int> queue{s};
  dist[s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

} // namespace

int MultiGraph::diameter() const {
  const auto adj = support_adjacency(*this);
  int diam = 0;
  for (int v = 0; v < vertex_count(); ++v) {
    const auto dist = support_bfs(adj, v);
    for (int d : dist) diam = std::max(diam, d);
  }
  return diam;
}

int MultiGraph::girth() const {
  for (const auto& e : edges_)
    if (e[0] == e[1]) return 1;
  std::set<std::pair<int, int>> simple;
  for (const auto& e : edges_) {
    if (e[0] == e[1]) continue;
    const auto key = std::minmax(e[0], e[1]);
    if (!simple.insert(key).second) return 2; // parallel pair
  }
  // BFS girth on the simple support: a shortest cycle is seen from its top vertex
  const auto adj = support_adjacency(*this);
  int best = -1;
  for (int s = 0; s < vertex_count(); ++s) {
    std::vector<int> dist(vertex_count(), -1), parent(vertex_count(), -1);
    std::vector<int> queue{s};
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (int w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        } else if (w != parent[v]) {
          const int cycle = dist[v] + dist[w] + 1;
          if (best < 0 || cycle < best) best = cycle;
        }
      }
    }
  }
  return best;
}

CoverBall::CoverBall(MultiGraph quotient, int base, int radius, std::int64_t max_vertices)
    : quotient_(std::move(quotient)), base_vertex_(base), max_vertices_(max_vertices) {
  if (base < 0 || base >= quotient_.vertex_count())
    throw InputError("CoverBall: base vertex out of range");
  if (radius < 0) throw InputError("CoverBall: radius must be nonnegative");
  projection_ = {base_vertex_};
  depth_ = {0};
  parent_ = {-1};
  in_dart_ = {-1};
  expand_to(radius);
}

void CoverBall::expand_to(int radius) {
  if (radius < radius_) return;
  // start of the current deepest level; empty when the cover is exhausted
  std::size_t level_begin = projection_.size();
  for (std::size_t v = 0; v < depth_.size(); ++v)
    if (depth_[v] == radius_) {
      level_begin = v;
      break;
    }
  for (int level = radius_ + 1; level <= radius; ++level) {
    const std::size_t level_end = projection_.size();
    for (std::size_t v = level_begin; v < level_end; ++v) {
      const int q = projection_[v];
      const int banned = in_dart_[v] < 0 ? -1 : (in_dart_[v] ^ 1);
      for (int d : quotient_.out_darts(q)) {
        if (d == banned) continue;
        if (static_cast<std::int64_t>(projection_.size()) >= max_vertices_)
          throw ResourceError("cover ball vertex budget exceeded: budget " +
                              std::to_string(max_vertices_));
        projection_.push_back(quotient_.dart_head(d));
        depth_.push_back(level);
        parent_.push_back(static_cast<int>(v));
        in_dart_.push_back(d);
      }
    }
    level_begin = level_end;
  }
  radius_ = std::max(radius_, radius);
}

MeasuredGraph CoverBall::tree() const {
  const int n = vertex_count();
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (int v = 1; v < n; ++v) edges.emplace_back(parent_[v], v);
  Eigen::VectorXd measure(n);
  std::vector<std::string> labels(n);
  for (int v = 0; v < n; ++v) {
    measure[v] = quotient_.measure(projection_[v]);
    labels[v] = std::to_string(projection_[v]);
  }
  MeasuredGraph g = MeasuredGraph::from_edges(n, edges, std::move(measure), std::move(labels));
  if (g.edge_count() != static_cast<std::size_t>(n - 1))
    throw InvariantViolation("cover ball is not a tree");
  return g;
}

CoverBall universal_cover_ball(const MultiGraph& quotient, int base, int radius,
                               std::int64_t max_vertices) {
  return CoverBall(quotient, base, radius, max_vertices);
}

GrowthProfile deck_growth(const CoverBall& cover, int R_max) {
  if (R_max < 0) throw InputError("deck_growth: R_max must be nonnegative");
  if (R_max > cover.radius())
    throw InputError("deck_growth: R_max exceeds the expanded radius " +
                     std::to_string(cover.radius()));
  std::vector<double> fiber_at(R_max + 1, 0.0);
  for (int v = 0; v < cover.vertex_count(); ++v) {
    if (cover.depth(v) <= R_max && cover.projection(v) == cover.base_projection())
      fiber_at[cover.depth(v)] += 1.0;
  }
  std::vector<double> radii(R_max + 1), values(R_max + 1);
  double cum = 0.0;
  for (int R = 0; R <= R_max; ++R) {
    cum += fiber_at[R];
    radii[R] = R;
    values[R] = cum;
  }
  return GrowthProfile(std::move(radii), std::move(values), GrowthMode::Absolute);
}

VolumeComparisonReport volume_comparison_check(const CoverBall& cover,
                                               const std::vector<int>& R_values,
                                               int max_centers) {
  if (R_values.empty()) throw InputError("volume_comparison_check: empty R range");
  const int D = cover.quotient().diameter();
  const int R_max = *std::max_element(R_values.begin(), R_values.end());
  if (R_max + D > cover.radius())
    throw InputError("volume_comparison_check: need expansion to R_max + D = " +
                     std::to_string(R_max + D));
  const GrowthProfile fgamma = deck_growth(cover, R_max + D);

  // adjacency of the expanded tree, once
  const int n = cover.vertex_count();
  std::vector<std::vector<int>> adj(n);
  for (int v = 1; v < n; ++v) {
    adj[cover.parent(v)].push_back(v);
    adj[v].push_back(cover.parent(v));
  }

  VolumeComparisonReport report;
  report.V0 = cover.quotient().total_measure();
  report.D = D;
  report.girth = cover.quotient().girth();

  std::vector<int> dist(n);
  std::vector<int> queue;
  for (int R : R_values) {
    if (R < 0) throw InputError("volume_comparison_check: negative radius");
    // centers whose radius-R ball lies inside the expansion
    std::vector<int> centers;
    for (int v = 0; v < n; ++v)
      if (cover.depth(v) + R <= cover.radius()) centers.push_back(v);
    if (static_cast<int>(centers.size()) > max_centers) {
      std::vector<int> picked;
      picked.reserve(max_centers);
      const double stride = static_cast<double>(centers.size()) / max_centers;
      for (int i = 0; i < max_centers; ++i)
        picked.push_back(centers[static_cast<std::size_t>(i * stride)]);
      centers = std::move(picked);
    }

    double lhs_max = 0.0;
    for (int c : centers) {
      // depth-limited BFS in the tree
      std::fill(dist.begin(), dist.end(), -1);
      queue.clear();
      queue.push_back(c);
      dist[c] = 0;
      double mass = cover.lifted_measure(c);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        if (dist[v] == R) continue;
        for (int w : adj[v]) {
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            mass += cover.lifted_measure(w);
            queue.push_back(w);
          }
        }
      }
      lhs_max = std::max(lhs_max, mass);
    }

    VolumeComparisonReport::Row row;
    row.R = R;
    row.lhs = lhs_max;
    row.rhs = report.V0 * fgamma.value_at(R + D);
    row.ratio = row.lhs / row.rhs;
    row.centers_checked = static_cast<int>(centers.size());
    if (row.lhs > row.rhs * (1.0 + 1e-12)) report.any_violation = true;
    report.rows.push_back(row);
  }
  return report;
}

} // namespace covering
} // namespace poincarekit
