#ifndef POINCAREKIT_DISCRETIZE_HPP
#define POINCAREKIT_DISCRETIZE_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <string>
#include <vector>

#include "poincarekit/growth_profile.hpp"
#include "poincarekit/measured_graph.hpp"

namespace poincarekit {
namespace discretize {

// Greedy epsilon-net of a host graph: centers are epsilon-separated and their
// closed epsilon-balls cover the host; the quotient graph joins centers at host
// distance in (0, 2 epsilon) and weighs each center by the measure of its
// epsilon-ball. The quotient path metric has edge length epsilon.
struct Net {
  MeasuredGraph host;
  double epsilon = 1.0;
  std::vector<int> centers; // ascending host ids; quotient vertex i is centers[i]
  MeasuredGraph quotient;
  std::vector<std::vector<int>> assignment; // host id -> quotient indices covering it
  // row y = nu-averaging over the host ball B(centers[y], epsilon); maps a host
  // function u to its discretization u~ on the quotient
  Eigen::SparseMatrix<double> mean_operator;

  int quotient_hops(double R) const; // ball radius R in the scaled metric -> hops
};

Net build_net(const MeasuredGraph& host, double epsilon);

struct MultiplicityReport {
  int multiplicity = 0;
  double bound = 0.0;
  double query_radius = 0.0; // 3 L epsilon + 1/2
};

// Max number of L-epsilon center balls containing one host vertex, against the
// growth bound f(3 L epsilon + 1/2). A bound violation is a bug detector.
MultiplicityReport covering_multiplicity(const Net& net, double L,
                                         const GrowthProfile& f_host);

struct QiOptions {
  bool all_pairs = true;
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;
};

struct QiReport {
  double worst_lower = 0.0; // max d / (2 rho)
  double worst_upper = 0.0; // max rho / (f (d + 2 epsilon))
  std::int64_t pairs_checked = 0;
  double f_value = 0.0; // f(6 epsilon + 1/2)
  bool any_violation = false;
  struct Violation {
    int ci, cj;
    double d, rho;
    std::string which;
  };
  std::vector<Violation> violations;
};

// d <= 2 rho <= 2 f(6 eps + 1/2)(d + 2 eps) over center pairs.
QiReport qi_distortion_check(const Net& net, const GrowthProfile& f_host,
                             const QiOptions& options = {});

struct TransferRow {
  std::string name; // vol-a, vol-a-proof, vol-b, vol-c, vol-d
  double R = 0, lhs = 0, rhs = 0, ratio = 0;
  std::string flag; // "saturated" when the R' quotient ball covers everything
};

struct TransferReport {
  std::vector<TransferRow> rows;
  bool any_violation = false;
};

// The four ball-volume transfer inequalities between host and net, with the
// proof-line variant of the first one computed alongside.
TransferReport volume_transfer_check(const Net& net, const std::vector<double>& R_values,
                                     const GrowthProfile& f_host);

struct GradientCheckReport {
  double lhs_norm = 0.0;     // ||delta u~||_{sigma, quotient ball}
  double rhs_norm = 0.0;     // ||delta u||_{sigma, host window}
  double constant = 0.0;     // 2 C^(1/sigma) f(3e+1/2) f^(1/sigma)(3e)
  double ratio = 0.0;        // lhs / (constant * rhs)
  double window_radius = 0.0;
  bool truncated = false;    // host window clipped: informational only
  bool violation = false;
};

// Discretized-gradient comparison: the sigma-norm of delta u~ over the quotient
// ball against the host gradient norm over the enlarged window.
GradientCheckReport discretized_gradient_check(const Net& net, const Eigen::VectorXd& u,
                                               int center_index, double R, double sigma,
                                               double C_loc, double L,
                                               const GrowthProfile& f_host);

} // namespace discretize
} // namespace poincarekit

#endif
