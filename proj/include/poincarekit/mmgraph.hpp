#ifndef POINCAREKIT_MMGRAPH_HPP
#define POINCAREKIT_MMGRAPH_HPP

#include <Eigen/Core>
#include <vector>

#include "poincarekit/growth_profile.hpp"
#include "poincarekit/measured_graph.hpp"
#include "poincarekit/util.hpp"

namespace poincarekit {

// Exact shortest-path (hop) distance from source to every vertex.
std::vector<int> bfs_distances(const MeasuredGraph& graph, int source);

// Closed ball {y : rho(center,y) <= R}, ascending vertex ids.
std::vector<int> ball(const MeasuredGraph& graph, int center, double R);

// nu(B(center,R)) without materializing the ball.
double ball_measure(const MeasuredGraph& graph, int center, double R);

// |delta u|(x) = sqrt(sum_{y~x} (u(x)-u(y))^2)
double gradient_norm(const MeasuredGraph& graph, const Eigen::VectorXd& u, int x);

// Vector of |delta u| over all vertices.
Eigen::VectorXd gradient_norms(const MeasuredGraph& graph, const Eigen::VectorXd& u);

// integral over S of w dnu = sum_{x in S} w(x) nu(x)
double integrate(const MeasuredGraph& graph, const Eigen::VectorXd& w,
                 const std::vector<int>& S);

// nu-average of u over the closed ball B(center,R)
double ball_mean(const MeasuredGraph& graph, const Eigen::VectorXd& u, int center,
                 double R);

// Exact growth profile: value at R is the max over all vertices of the mode's
// quantity at radius R (full BFS sweep).
GrowthProfile growth_function(const MeasuredGraph& graph, const std::vector<double>& radii,
                              GrowthMode mode);

// Exact doubling table: value at r is max_x nu(B(x,2r)) / nu(B(x,r)).
// Doubling ratios need not be monotone in r, so the profile is built with the
// monotonicity requirement relaxed.
GrowthProfile doubling_constant(const MeasuredGraph& graph, const std::vector<double>& radii);

// Largest nu(B(x,R)) over all vertices (companion to window_truncated).
double max_ball_measure(const MeasuredGraph& graph, double R);
int max_ball_size(const MeasuredGraph& graph, double R);

// A window B(center,R) counts as truncated by the ambient graph boundary when
// it saturates the whole graph or is smaller than the largest radius-R ball
// elsewhere (so a boundary clipped it). Vertex-transitive graphs only truncate
// by saturation.
bool window_truncated(const MeasuredGraph& graph, int center, double R);

// {0.5, 1.0, 1.5, ..., max}
std::vector<double> half_integer_radii(double max);
// {0, 1, 2, ..., max}
std::vector<double> integer_radii(int max);

// Random tree plus extra random edges; always connected, measures uniform in
// [measure_lo, measure_hi]. Used by the randomized verification suites.
MeasuredGraph random_connected_graph(Rng& rng, int vertex_count, double extra_edge_factor,
                                     double measure_lo = 1.0, double measure_hi = 1.0);

int graph_diameter(const MeasuredGraph& graph);
int eccentricity(const MeasuredGraph& graph, int v);

} // namespace poincarekit

#endif
