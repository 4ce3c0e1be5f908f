// Test-only oracles: independent implementations used to derive expected
// values. They deliberately avoid the library code paths they check.
#ifndef POINCAREKIT_TESTS_ORACLES_HPP
#define POINCAREKIT_TESTS_ORACLES_HPP

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <vector>

namespace oracles {

// plain queue BFS over adjacency lists
std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int source);

// word-metric ball sizes |B(e,R)| for the free group of given rank, by direct
// reduced-word enumeration
std::vector<std::int64_t> free_ball_sizes(int rank, int R);
// same for the free abelian group, by direct vector enumeration
std::vector<std::int64_t> abelian_ball_sizes(int rank, int R);
// Heisenberg group over Z with the standard generator pair, by exact 3x3
// integer matrix BFS
std::vector<std::int64_t> heisenberg_ball_sizes(int R);

std::int64_t closed_form_free2(int R);    // 2 * 3^R - 1
std::int64_t closed_form_abelian2(int R); // 2R^2 + 2R + 1
std::int64_t closed_form_theta(int R);    // 3 * 2^R - 2

// non-backtracking walk counts from base: returns counts per exact length, and
// (optionally) counts restricted to walks that end at the base vertex
struct WalkCounts {
  std::vector<std::int64_t> total;    // index = length
  std::vector<std::int64_t> to_base;  // walks returning to the base vertex
};
WalkCounts nonbacktracking_walks(int vertex_count,
                                 const std::vector<std::array<int, 2>>& edges, int base,
                                 int max_length);

// max generalized eigenvalue of (N, D) on the complement of constants via the
// QZ route: D is regularized by the rank-one constants term
double pencil_max_eigenvalue(const Eigen::MatrixXd& N, const Eigen::MatrixXd& D);

// closed-form whole-cycle optimum at sigma = 2
double cycle_optimal_constant(int n);

// least squares slope by the centered-moment formula
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

// Gromov delta by the ordered four-point Gromov-product definition
double delta_from_gromov_products(const std::vector<std::vector<int>>& dist);

} // namespace oracles

#endif
