#ifndef POINCAREKIT_GROUPS_HPP
#define POINCAREKIT_GROUPS_HPP

#include <cstdint>
#include <functional>
#include <gmpxx.h>
#include <string>
#include <vector>

#include "poincarekit/growth_profile.hpp"
#include "poincarekit/measured_graph.hpp"
#include "poincarekit/mmgraph.hpp"

namespace poincarekit {
namespace groups {

// One group element in canonical form. Which payload is live depends on the
// owning model's kind: reduced word (free), exponent vector (free abelian),
// exact integer entries (matrix), or factor tuple (direct product).
struct GroupElement {
  std::vector<std::int32_t> word;
  std::vector<std::int64_t> vec;
  std::vector<mpz_class> mat;
  std::vector<GroupElement> factors;
};

class GroupModel {
public:
  enum class Kind { Free, FreeAbelian, Matrix, Product };

  static GroupModel free_group(int rank);
  static GroupModel free_abelian(int rank);
  // generators must be square, non-identity, and closed under inversion
  static GroupModel matrix_group(int dim, std::vector<std::vector<mpz_class>> generators);
  static GroupModel direct_product(std::vector<GroupModel> factors);

  Kind kind() const { return kind_; }
  int rank() const { return rank_; }
  int matrix_dim() const { return dim_; }
  const std::vector<GroupModel>& factors() const { return factors_; }

  GroupElement identity() const;
  // symmetric: closed under inversion, identity excluded
  const std::vector<GroupElement>& generators() const { return generators_; }
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  bool is_identity(const GroupElement& a) const;
  // exact form, usable as hash key and as a deterministic sort key
  std::string canonical_key(const GroupElement& a) const;

private:
  GroupModel() = default;
  Kind kind_ = Kind::Free;
  int rank_ = 0;
  int dim_ = 0;
  std::vector<std::vector<mpz_class>> matrix_generators_;
  std::vector<GroupModel> factors_;
  std::vector<GroupElement> generators_;
};

struct MeasureRule {
  std::function<double(const GroupElement&)> fn; // empty = counting measure
  double lower = 1.0;                            // stated bounds c <= nu(x) <= C
  double upper = 1.0;

  static MeasureRule counting() { return {}; }
  static MeasureRule custom(std::function<double(const GroupElement&)> f, double c,
                            double C) {
    return {std::move(f), c, C};
  }
  bool is_counting() const { return !fn; }
};

// Ball of word-metric radius `radius` around the identity. Vertex 0 is the
// identity; labels carry canonical forms; vertex order is sorted canonical
// form per BFS level, so rebuilding is reproducible.
struct CayleyBall {
  MeasuredGraph graph;
  int radius = 0;
  int base = 0;
  std::vector<GroupElement> elements;
  std::vector<int> word_length;      // distance from identity per vertex
  std::vector<std::int64_t> level_sizes; // elements at each exact length 0..radius
};

CayleyBall cayley_ball(const GroupModel& group, int radius,
                       const MeasureRule& rule = MeasureRule::counting(),
                       std::int64_t max_vertices = 1'000'000);

// F(R) = nu(closed ball of word radius R), R = 0..R_max; cardinality under the
// counting measure.
GrowthProfile growth_series(const GroupModel& group, int R_max,
                            const MeasureRule& rule = MeasureRule::counting(),
                            std::int64_t max_vertices = 1'000'000);

struct EntropyEstimate {
  double slope = 0.0;
  double residual = 0.0;
  int points = 0;
};

// Least-squares slope of ln(value) against radius over the tabulated radii in
// [window_lo, window_hi]. A finite-R stand-in for the volume-entropy liminf;
// reported as an estimate, never as the entropy itself.
EntropyEstimate entropy_estimate(const GrowthProfile& profile, double window_lo,
                                 double window_hi);

struct DeltaOptions {
  bool exhaustive = true;
  std::int64_t sample_count = 0; // used when exhaustive = false
  std::uint64_t seed = 0;
  std::int64_t max_quadruples = 10'000'000;
};

// Four-point Gromov delta. Exhaustive mode is exact for the finite graph;
// sampled mode is a lower estimate.
double hyperbolicity_delta(const MeasuredGraph& graph, const DeltaOptions& options);

struct SystoleEstimate {
  std::vector<std::string> sample_keys; // canonical forms of sampled x
  std::vector<int> pointwise;           // min_gamma |x^-1 gamma x| per sample
  int global = 0;
  int sample_radius = 0;
  int gamma_radius = 0;
  std::string flag = "sample-limited upper estimate";
};

// Pointwise displacement minimum over nontrivial gamma with |gamma| <=
// gamma_radius, for every x with |x| <= sample_radius.
SystoleEstimate systole_estimate(const GroupModel& group, int sample_radius,
                                 int gamma_radius,
                                 std::int64_t max_vertices = 1'000'000);

} // namespace groups
} // namespace poincarekit

#endif
