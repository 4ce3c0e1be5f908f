#ifndef POINCAREKIT_COVERING_HPP
#define POINCAREKIT_COVERING_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "poincarekit/growth_profile.hpp"
#include "poincarekit/measured_graph.hpp"

namespace poincarekit {
namespace covering {

// Finite connected graph that may carry loops and parallel edges; only used as
// the quotient input of covering-space constructions.
class MultiGraph {
public:
  MultiGraph(int vertex_count, std::vector<std::array<int, 2>> edges,
             Eigen::VectorXd measure);

  int vertex_count() const { return static_cast<int>(out_darts_.size()); }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  double measure(int v) const;
  double total_measure() const { return measure_.sum(); }
  const Eigen::VectorXd& measure_vector() const { return measure_; }
  // loops contribute 2
  int degree(int v) const { return static_cast<int>(out_darts_[v].size()); }

  // darts: edge k yields darts 2k (a->b) and 2k+1 (b->a); reverse(d) = d^1
  const std::vector<int>& out_darts(int v) const { return out_darts_[v]; }
  int dart_head(int d) const;

  // combinatorial distances on the support graph; loops contribute nothing
  int diameter() const;
  // shortest cycle length: 1 with a loop, 2 with a parallel pair, -1 if acyclic
  int girth() const;

private:
  std::vector<std::array<int, 2>> edges_;
  Eigen::VectorXd measure_;
  std::vector<std::vector<int>> out_darts_;
};

// Ball of the universal cover around a lift of `base`, grown by non-backtracking
// edge walks. Expansion mutates the ball (single writer); every query afterwards
// is a pure read.
class CoverBall {
public:
  CoverBall(MultiGraph quotient, int base, int radius,
            std::int64_t max_vertices = 1'000'000);

  void expand_to(int radius);

  const MultiGraph& quotient() const { return quotient_; }
  int radius() const { return radius_; }
  int base() const { return 0; }
  int base_projection() const { return base_vertex_; }
  int vertex_count() const { return static_cast<int>(projection_.size()); }
  int projection(int v) const { return projection_[v]; }
  int depth(int v) const { return depth_[v]; }
  int parent(int v) const { return parent_[v]; }
  double lifted_measure(int v) const { return quotient_.measure(projection_[v]); }

  // Materializes the current ball as a measured graph (always a tree).
  MeasuredGraph tree() const;

private:
  MultiGraph quotient_;
  int base_vertex_;
  int radius_ = 0;
  std::int64_t max_vertices_;
  std::vector<int> projection_;
  std::vector<int> depth_;
  std::vector<int> parent_;  // -1 at the root
  std::vector<int> in_dart_; // dart taken from parent, -1 at the root
};

CoverBall universal_cover_ball(const MultiGraph& quotient, int base, int radius,
                               std::int64_t max_vertices = 1'000'000);

// F(R) = number of cover vertices within distance R of the base lift that
// project onto the base vertex: the orbit growth of the deck group.
GrowthProfile deck_growth(const CoverBall& cover, int R_max);

struct VolumeComparisonReport {
  struct Row {
    double R = 0;
    double lhs = 0;   // max over checked centers of lifted ball measure
    double rhs = 0;   // V0 * F(R + D)
    double ratio = 0; // lhs / rhs
    int centers_checked = 0;
  };
  std::vector<Row> rows;
  bool any_violation = false;
  double V0 = 0;
  int D = 0;
  int girth = -1; // combinatorial systole surrogate of the quotient, reported only
};

// Checks lifted-ball measure <= V0 * F(R + D) over cover centers whose radius-R
// ball lies inside the expanded region. Violations indicate implementation bugs.
VolumeComparisonReport volume_comparison_check(const CoverBall& cover,
                                               const std::vector<int>& R_values,
                                               int max_centers = 256);

} // namespace covering
} // namespace poincarekit

#endif
