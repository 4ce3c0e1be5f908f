#include "poincarekit/mmgraph.hpp"

#include <algorithm>
#include <cmath>

#include "poincarekit/errors.hpp"

namespace poincarekit {

namespace {

// BFS into caller-provided buffers; returns eccentricity of source.
int bfs_into(const MeasuredGraph& g, int source, std::vector<int>& dist,
             std::vector<int>& queue) {
  const int n = g.vertex_count();
  dist.assign(n, -1);
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  int ecc = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    const int dv = dist[v];
    ecc = dv;
    for (int w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dv + 1;
        queue.push_back(w);
      }
    }
  }
  return ecc;
}

// cumulative[d] = nu{x : rho(source,x) <= d}, for d = 0..ecc
std::vector<double> cumulative_ball_measure(const MeasuredGraph& g,
                                            const std::vector<int>& dist, int ecc) {
  std::vector<double> by_dist(ecc + 1, 0.0);
  for (int v = 0; v < g.vertex_count(); ++v) by_dist[dist[v]] += g.measure_vector()[v];
  for (int d = 1; d <= ecc; ++d) by_dist[d] += by_dist[d - 1];
  return by_dist;
}

std::vector<int> cumulative_ball_count(const std::vector<int>& dist, int ecc) {
  std::vector<int> by_dist(ecc + 1, 0);
  for (int d : dist) by_dist[d] += 1;
  for (int d = 1; d <= ecc; ++d) by_dist[d] += by_dist[d - 1];
  return by_dist;
}

int radius_to_hops(double R) {
  if (R < 0.0) throw InputError("ball radius must be nonnegative");
  return static_cast<int>(std::floor(R));
}

} // namespace

std::vector<int> bfs_distances(const MeasuredGraph& graph, int source) {
  graph.check_vertex(source);
  std::vector<int> dist, queue;
  bfs_into(graph, source, dist, queue);
  return dist;
}

std::vector<int> ball(const MeasuredGraph& graph, int center, double R) {
  graph.check_vertex(center);
  const int hops = radius_to_hops(R);
  std::vector<int> dist, queue;
  bfs_into(graph, center, dist, queue);
  std::vector<int> result;
  for (int v = 0; v < graph.vertex_count(); ++v)
    if (dist[v] <= hops) result.push_back(v);
  return result;
}

double ball_measure(const MeasuredGraph& graph, int center, double R) {
  graph.check_vertex(center);
  const int hops = radius_to_hops(R);
  std::vector<int> dist, queue;
  const int ecc = bfs_into(graph, center, dist, queue);
  double total = 0.0;
  for (int v = 0; v < graph.vertex_count(); ++v)
    if (dist[v] <= hops) total += graph.measure_vector()[v];
  (void)ecc;
  return total;
}

double gradient_norm(const MeasuredGraph& graph, const Eigen::VectorXd& u, int x) {
  graph.check_vertex(x);
  if (u.size() != graph.vertex_count())
    throw InputError("gradient_norm: u is not defined on every vertex");
  double s = 0.0;
  for (int y : graph.neighbors(x)) {
    const double d = u[x] - u[y];
    s += d * d;
  }
  return std::sqrt(s);
}

Eigen::VectorXd gradient_norms(const MeasuredGraph& graph, const Eigen::VectorXd& u) {
  if (u.size() != graph.vertex_count())
    throw InputError("gradient_norms: u is not defined on every vertex");
  Eigen::VectorXd g(graph.vertex_count());
  for (int x = 0; x < graph.vertex_count(); ++x) g[x] = gradient_norm(graph, u, x);
  return g;
}

double integrate(const MeasuredGraph& graph, const Eigen::VectorXd& w,
                 const std::vector<int>& S) {
  if (w.size() != graph.vertex_count())
    throw InputError("integrate: w is not defined on every vertex");
  double s = 0.0;
  for (int v : S) {
    graph.check_vertex(v);
    s += w[v] * graph.measure_vector()[v];
  }
  return s;
}

double ball_mean(const MeasuredGraph& graph, const Eigen::VectorXd& u, int center,
                 double R) {
  if (u.size() != graph.vertex_count())
    throw InputError("ball_mean: u is not defined on every vertex");
  graph.check_vertex(center);
  const int hops = radius_to_hops(R);
  std::vector<int> dist, queue;
  bfs_into(graph, center, dist, queue);
  double mass = 0.0, sum = 0.0;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (dist[v] <= hops) {
      mass += graph.measure_vector()[v];
      sum += u[v] * graph.measure_vector()[v];
    }
  }
  return sum / mass;
}

GrowthProfile growth_function(const MeasuredGraph& graph, const std::vector<double>& radii,
                              GrowthMode mode) {
  if (radii.empty()) throw InputError("growth_function: empty radii");
  const int n = graph.vertex_count();
  const std::size_t k = radii.size();
  std::vector<std::vector<double>> per_vertex(n);
  std::vector<int> ecc_of(n, 0);

  parallel_for(n, [&](std::int64_t x) {
    std::vector<int> dist, queue;
    const int ecc = bfs_into(graph, static_cast<int>(x), dist, queue);
    ecc_of[x] = ecc;
    const auto cum = cumulative_ball_measure(graph, dist, ecc);
    std::vector<double> vals(k);
    for (std::size_t j = 0; j < k; ++j) {
      const int hops = std::min(radius_to_hops(radii[j]), ecc);
      const double mass = cum[hops];
      switch (mode) {
        case GrowthMode::VertexRatio:
        case GrowthMode::HalfBallRatio:
          // B(x,1/2) = {x} on graphs, so both ratios divide by nu(x)
          vals[j] = mass / graph.measure_vector()[x];
          break;
        case GrowthMode::Absolute:
          vals[j] = mass;
          break;
      }
    }
    per_vertex[x] = std::move(vals);
  });

  std::vector<double> values(k, 0.0);
  for (int x = 0; x < n; ++x)
    for (std::size_t j = 0; j < k; ++j) values[j] = std::max(values[j], per_vertex[x][j]);

  const int diameter = *std::max_element(ecc_of.begin(), ecc_of.end());
  const bool saturated = radii.back() >= diameter;
  return GrowthProfile(radii, std::move(values), mode, /*require_monotone=*/true,
                       saturated);
}

GrowthProfile doubling_constant(const MeasuredGraph& graph,
                                const std::vector<double>& radii) {
  if (radii.empty()) throw InputError("doubling_constant: empty radii");
  for (double r : radii)
    if (!(r > 0.0)) throw InputError("doubling_constant: radii must be positive");
  const int n = graph.vertex_count();
  const std::size_t k = radii.size();
  std::vector<std::vector<double>> per_vertex(n);

  parallel_for(n, [&](std::int64_t x) {
    std::vector<int> dist, queue;
    const int ecc = bfs_into(graph, static_cast<int>(x), dist, queue);
    const auto cum = cumulative_ball_measure(graph, dist, ecc);
    std::vector<double> vals(k);
    for (std::size_t j = 0; j < k; ++j) {
      const int inner = std::min(radius_to_hops(radii[j]), ecc);
      const int outer = std::min(radius_to_hops(2.0 * radii[j]), ecc);
      vals[j] = cum[outer] / cum[inner];
    }
    per_vertex[x] = std::move(vals);
  });

  std::vector<double> values(k, 0.0);
  for (int x = 0; x < n; ++x)
    for (std::size_t j = 0; j < k; ++j) values[j] = std::max(values[j], per_vertex[x][j]);
  return GrowthProfile(radii, std::move(values), GrowthMode::Absolute,
                       /*require_monotone=*/false);
}

double max_ball_measure(const MeasuredGraph& graph, double R) {
  const int n = graph.vertex_count();
  std::vector<double> best(n, 0.0);
  parallel_for(n, [&](std::int64_t x) {
    best[x] = ball_measure(graph, static_cast<int>(x), R);
  });
  return *std::max_element(best.begin(), best.end());
}

int max_ball_size(const MeasuredGraph& graph, double R) {
  const int n = graph.vertex_count();
  const int hops = radius_to_hops(R);
  std::vector<int> best(n, 0);
  parallel_for(n, [&](std::int64_t x) {
    std::vector<int> dist, queue;
    const int ecc = bfs_into(graph, static_cast<int>(x), dist, queue);
    best[x] = cumulative_ball_count(dist, ecc)[std::min(hops, ecc)];
  });
  return *std::max_element(best.begin(), best.end());
}

bool window_truncated(const MeasuredGraph& graph, int center, double R) {
  graph.check_vertex(center);
  const int hops = radius_to_hops(R);
  std::vector<int> dist, queue;
  const int ecc = bfs_into(graph, center, dist, queue);
  const auto counts = cumulative_ball_count(dist, ecc);
  const int own = counts[std::min(hops, ecc)];
  if (own == graph.vertex_count()) return true;
  return own < max_ball_size(graph, R);
}

std::vector<double> half_integer_radii(double max) {
  std::vector<double> radii;
  for (double r = 0.5; r <= max + 1e-12; r += 0.5) radii.push_back(r);
  if (radii.empty()) throw InputError("half_integer_radii: max below 0.5");
  return radii;
}

std::vector<double> integer_radii(int max) {
  if (max < 0) throw InputError("integer_radii: negative max");
  std::vector<double> radii(max + 1);
  for (int r = 0; r <= max; ++r) radii[r] = r;
  return radii;
}

MeasuredGraph random_connected_graph(Rng& rng, int vertex_count, double extra_edge_factor,
                                     double measure_lo, double measure_hi) {
  if (vertex_count <= 0) throw InputError("random_connected_graph: empty graph");
  std::vector<std::pair<int, int>> edges;
  // random attachment tree keeps it connected
  for (int v = 1; v < vertex_count; ++v) {
    const int parent = static_cast<int>(rng.next_below(v));
    edges.emplace_back(parent, v);
  }
  const int extra = static_cast<int>(extra_edge_factor * vertex_count);
  for (int e = 0; e < extra; ++e) {
    const int a = static_cast<int>(rng.next_below(vertex_count));
    const int b = static_cast<int>(rng.next_below(vertex_count));
    if (a != b) edges.emplace_back(a, b); // duplicates collapse in from_edges
  }
  Eigen::VectorXd measure(vertex_count);
  for (int v = 0; v < vertex_count; ++v)
    measure[v] = measure_lo + (measure_hi - measure_lo) * rng.next_double();
  return MeasuredGraph::from_edges(vertex_count, edges, std::move(measure));
}

int eccentricity(const MeasuredGraph& graph, int v) {
  graph.check_vertex(v);
  std::vector<int> dist, queue;
  return bfs_into(graph, v, dist, queue);
}

int graph_diameter(const MeasuredGraph& graph) {
  const int n = graph.vertex_count();
  std::vector<int> ecc(n, 0);
  parallel_for(n, [&](std::int64_t x) {
    std::vector<int> dist, queue;
    ecc[x] = bfs_into(graph, static_cast<int>(x), dist, queue);
  });
  return *std::max_element(ecc.begin(), ecc.end());
}

} // namespace poincarekit
