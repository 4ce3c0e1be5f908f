#include "poincarekit/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "poincarekit/errors.hpp"
#include "poincarekit/mmgraph.hpp"
#include "poincarekit/util.hpp"

namespace poincarekit {
namespace pipeline {

void run_pipeline(const MeasuredGraph& host, const PipelineConfig& config,
                  PipelineReport& out) {
  if (host.vertex_count() < 2)
    throw InputError("pipeline: host must have at least two vertices");
  if (config.sigmas.empty()) throw InputError("pipeline: no sigma values");
  if (!(config.r0 >= 1.0) || !(config.L >= 1.0))
    throw InputError("pipeline: need r0 >= 1 and L >= 1");

  out.host_vertices = host.vertex_count();
  const int diameter = graph_diameter(host);
  out.host_diameter = diameter;

  // exact half-integer growth table swept to the diameter; saturated, so the
  // theorem's f(4 lambda R) lookups stay meaningful past the table
  const GrowthProfile f =
      growth_function(host, half_integer_radii(diameter + 0.5), GrowthMode::HalfBallRatio);
  out.f_3_5 = f.value_at(3.5);
  out.f_7_5 = f.value_at(7.5);
  out.lambda = out.f_7_5 + 1.0;
  out.valid_R_min = 4.0 * out.lambda + config.L;
  out.regime_reachable = out.valid_R_min <= diameter;
  out.regime_flag = out.regime_reachable
                        ? "in-regime radii reachable"
                        : "out-of-regime: valid regime R >= " +
                              format_double(out.valid_R_min) +
                              " exceeds the largest computable radius " +
                              std::to_string(diameter);

  const discretize::Net net = discretize::build_net(host, 1.0);

  out.multiplicity = discretize::covering_multiplicity(net, config.L, f);
  out.qi = discretize::qi_distortion_check(net, f);
  if (out.qi->any_violation) out.any_violation = true;
  {
    std::vector<double> Rs;
    for (int R = 1; R <= std::min(10, diameter); ++R) Rs.push_back(R);
    out.transfer = discretize::volume_transfer_check(net, Rs, f);
    if (out.transfer->any_violation) out.any_violation = true;
  }

  poincare::EmpiricalOptions emp;
  emp.trials = config.trials;
  emp.seed = config.seed;
  for (double sigma : config.sigmas) {
    const double c_loc = poincare::ploc_estimate(host, config.r0, config.L, sigma, emp);
    out.C_loc.emplace_back(sigma, c_loc);
    out.C0.emplace_back(sigma, std::pow(2.0, 4.0 * sigma) * c_loc *
                                   std::pow(out.f_3_5, sigma + 2.0));
  }

  // discretized-gradient cells over random u
  std::vector<int> centers = config.centers;
  if (centers.empty()) {
    int best = 0, best_ecc = host.vertex_count() + 1;
    for (int v = 0; v < host.vertex_count(); ++v) {
      const int e = eccentricity(host, v);
      if (e < best_ecc) {
        best_ecc = e;
        best = v;
      }
    }
    centers.push_back(best);
  }
  {
    Rng rng = Rng(config.seed).fork(35);
    for (int t = 0; t < config.lemma35_u_count; ++t) {
      Eigen::VectorXd u(host.vertex_count());
      for (int v = 0; v < host.vertex_count(); ++v) u[v] = rng.next_normal();
      for (double sigma : config.sigmas) {
        double c_loc = 0;
        for (const auto& [s, c] : out.C_loc)
          if (s == sigma) c_loc = c;
        for (int center : centers) {
          int ci = -1;
          for (std::size_t k = 0; k < net.centers.size(); ++k)
            if (net.centers[k] == center) ci = static_cast<int>(k);
          if (ci < 0) throw InputError("pipeline: center is not a net center");
          for (double R : config.lemma35_R) {
            Lemma35Cell cell{center, R, sigma,
                             discretize::discretized_gradient_check(net, u, ci, R, sigma,
                                                                    c_loc, config.L, f)};
            if (cell.check.violation) out.any_violation = true;
            out.lemma35.push_back(std::move(cell));
          }
        }
      }
    }
  }

  // informational bound ratios across computable radii
  std::vector<double> report_R = config.report_R;
  if (report_R.empty())
    for (int R = 1; R <= std::min(diameter, 8); ++R) report_R.push_back(R);
  for (double sigma : config.sigmas) {
    double c_loc = 0;
    for (const auto& [s, c] : out.C_loc)
      if (s == sigma) c_loc = c;
    poincare::BoundSpec spec;
    spec.kind = poincare::BoundKind::Main;
    spec.C = c_loc;
    spec.L = config.L;
    spec.f = poincare::GrowthInput::table(f);
    std::vector<poincare::PoincareInstance> instances;
    for (int center : centers)
      for (double R : report_R)
        instances.push_back({center, R, sigma, out.lambda});
    const poincare::VerifyResult verdict =
        poincare::verify_bounds(host, instances, spec, emp, /*allow_out_of_regime=*/true);
    if (verdict.any_violation) out.any_violation = true;
    for (const auto& r : verdict.reports) out.ratios.push_back(r);
  }
  out.complete = true;
}

} // namespace pipeline
} // namespace poincarekit
