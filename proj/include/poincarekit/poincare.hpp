#ifndef POINCAREKIT_POINCARE_HPP
#define POINCAREKIT_POINCARE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "poincarekit/growth_profile.hpp"
#include "poincarekit/measured_graph.hpp"

namespace poincarekit {
namespace poincare {

// One ball-to-dilated-ball inequality instance. Functions live on the whole
// finite graph, so gradient stencils at the window boundary stay complete.
struct PoincareInstance {
  int center = 0;
  double R = 1.0;
  double sigma = 2.0;
  double lambda = 1.0; // RHS ball dilation
};

struct InstanceWindows {
  std::vector<int> lhs_ball; // B(center, R)
  std::vector<int> rhs_ball; // B(center, lambda R)
  std::vector<int> domain;   // rhs ball plus its 1-neighborhood
  bool truncated = false;    // lambda-R window clipped by the graph boundary
};

InstanceWindows make_windows(const MeasuredGraph& graph, const PoincareInstance& inst);

// sum over B(center,R) of |u - u_R|^sigma dnu
double lhs_value(const MeasuredGraph& graph, const PoincareInstance& inst,
                 const InstanceWindows& win, const Eigen::VectorXd& u);
// sum over B(center,lambda R) of |delta u|^sigma dnu
double rhs_value(const MeasuredGraph& graph, const PoincareInstance& inst,
                 const InstanceWindows& win, const Eigen::VectorXd& u);

struct OptimalResult {
  double value = 0.0;
  Eigen::VectorXd extremal;    // whole-graph vector, zero off the domain
  double residual = 0.0;       // ||N u - theta D u|| at unit ||u||
};

// Exact sigma = 2 optimum: largest generalized eigenvalue of the centered
// quadratic form against the gradient form, after deflating the constants.
OptimalResult optimal_constant_sigma2(const MeasuredGraph& graph,
                                      const PoincareInstance& inst);

enum class Family { RandomGaussian, DistanceFromPoint, IndicatorSmoothed, Sigma2Extremal };

std::vector<Family> all_families();
std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct EmpiricalOptions {
  std::vector<Family> families = all_families();
  int trials = 32; // random candidates per randomized family
  std::uint64_t seed = 0;
  bool local_ascent = true;
  int ascent_domain_cap = 400; // ascent skipped on larger domains
};

struct EmpiricalResult {
  double value = 0.0;
  Eigen::VectorXd argmax;
  std::string family;
};

// Max of lhs/rhs over generated candidates; a deterministic lower bound for
// the optimal constant at any sigma.
EmpiricalResult empirical_constant(const MeasuredGraph& graph,
                                   const PoincareInstance& inst,
                                   const EmpiricalOptions& options);

// Local Poincare constant: worst instance constant over all centers and radii
// R <= r0, with dilation L. Exact eigensolve at sigma = 2, empirical families
// otherwise.
double ploc_estimate(const MeasuredGraph& graph, double r0, double L, double sigma,
                     const EmpiricalOptions& options = {});

enum class BoundKind {
  GraphStrong,
  GraphLowerVertex,
  Main,
  Doubling,
  Main2,
  CayleyHyperbolic,
  HyperbolicSpace,
  Covering,
};

std::string to_string(BoundKind k);
BoundKind bound_kind_from_string(const std::string& s);

// Growth function slot of a bound: tabulated profile or closed form coef*R^exp.
class GrowthInput {
public:
  static GrowthInput table(GrowthProfile profile);
  static GrowthInput power(double coef, double exponent);

  double value_at(double r) const;
  bool is_table() const { return profile_.has_value(); }
  const GrowthProfile& profile() const;
  double coef() const { return coef_; }
  double exponent() const { return exponent_; }

private:
  GrowthInput() = default;
  std::optional<GrowthProfile> profile_;
  double coef_ = 0.0;
  double exponent_ = 0.0;
};

struct BoundSpec {
  BoundKind kind = BoundKind::GraphStrong;
  // scalar parameter slots; NaN marks "not supplied"
  double C = std::numeric_limits<double>::quiet_NaN();     // local Poincare constant
  double L = std::numeric_limits<double>::quiet_NaN();     // local dilation
  double c = std::numeric_limits<double>::quiet_NaN();     // inverse lower mass bound
  double C0 = std::numeric_limits<double>::quiet_NaN();    // doubling constant input
  double delta = std::numeric_limits<double>::quiet_NaN(); // Gromov delta
  double H = std::numeric_limits<double>::quiet_NaN();     // entropy bound
  double D = std::numeric_limits<double>::quiet_NaN();     // quotient diameter
  double V0 = std::numeric_limits<double>::quiet_NaN();    // quotient volume bound
  double nur = std::numeric_limits<double>::quiet_NaN();   // Cayley ball count nu(r)
  double r0 = std::numeric_limits<double>::quiet_NaN();    // local radius
  std::optional<GrowthInput> f;      // eqmain growth (graph-strong, main)
  std::optional<GrowthInput> V;      // absolute volume bound (main2)
  std::optional<GrowthInput> FGamma; // orbit growth (covering)
};

struct BoundEvaluation {
  double value = 0.0;
  double prefactor = 0.0; // R-independent factor of the formula
  double valid_R_min = 0.0;
  bool out_of_regime = false;
  std::map<std::string, double> derived; // lambda, C0, r, s as applicable
};

// Exact arithmetic evaluation of one explicit bound formula. R below the valid
// regime is a regime error unless allow_out_of_regime is set, in which case
// the evaluation is flagged.
BoundEvaluation bound_evaluate(const BoundSpec& spec, double R, double sigma,
                               bool allow_out_of_regime = false);

struct PoincareReport {
  int center = 0;
  double R = 0, sigma = 0, lambda = 1;
  double empirical = 0;
  std::optional<double> optimal; // sigma = 2 only
  double bound = 0;
  double ratio = 0; // empirical / bound
  std::vector<std::string> flags;
  bool violation = false; // in-regime, unflagged ratio above 1
};

struct VerifyResult {
  std::vector<PoincareReport> reports;
  bool any_violation = false;
};

VerifyResult verify_bounds(const MeasuredGraph& graph,
                           const std::vector<PoincareInstance>& instances,
                           const BoundSpec& spec, const EmpiricalOptions& options,
                           bool allow_out_of_regime = false);

// Randomized theorem suite over random connected measured graphs: checks
// lhs(u) <= bound * rhs(u) for random u at every center and radius.
struct RandomSuiteOptions {
  int graphs = 300;
  int max_vertices = 150;
  std::vector<double> sigmas = {1, 2, 3};
  int u_per_graph = 10;
  std::uint64_t seed = 0;
  double measure_lo = 0.1;
  double measure_hi = 10.0;
};

struct RandomSuiteResult {
  std::int64_t cells_checked = 0;
  std::int64_t violations = 0;
  double worst_ratio = 0.0;
};

RandomSuiteResult random_theorem_suite(BoundKind kind, const RandomSuiteOptions& options);

// |x|^sigma with fast paths for the small integer exponents the suites use
double power_sigma(double magnitude, double sigma);

} // namespace poincare
} // namespace poincarekit

#endif
