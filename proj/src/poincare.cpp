#include "poincarekit/poincare.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "poincarekit/errors.hpp"
#include "poincarekit/mmgraph.hpp"
#include "poincarekit/util.hpp"

namespace poincarekit {
namespace poincare {

double power_sigma(double magnitude, double sigma) {
  if (sigma == 1.0) return magnitude;
  if (sigma == 2.0) return magnitude * magnitude;
  if (sigma == 3.0) return magnitude * magnitude * magnitude;
  return std::pow(magnitude, sigma);
}

InstanceWindows make_windows(const MeasuredGraph& graph, const PoincareInstance& inst) {
  graph.check_vertex(inst.center);
  if (inst.R < 0 || inst.lambda < 1.0 || inst.sigma < 1.0)
    throw InputError("PoincareInstance: need R >= 0, lambda >= 1, sigma >= 1");
  InstanceWindows win;
  const auto dist = bfs_distances(graph, inst.center);
  const int lhs_hops = static_cast<int>(std::floor(inst.R));
  const int rhs_hops = static_cast<int>(std::floor(inst.lambda * inst.R + 1e-9));
  std::vector<char> in_domain(graph.vertex_count(), 0);
  for (int v = 0; v < graph.vertex_count(); ++v) {
    if (dist[v] <= lhs_hops) win.lhs_ball.push_back(v);
    if (dist[v] <= rhs_hops) {
      win.rhs_ball.push_back(v);
      in_domain[v] = 1;
      for (int w : graph.neighbors(v)) in_domain[w] = 1;
    }
  }
  for (int v = 0; v < graph.vertex_count(); ++v)
    if (in_domain[v]) win.domain.push_back(v);
  win.truncated = window_truncated(graph, inst.center, inst.lambda * inst.R);
  return win;
}

double lhs_value(const MeasuredGraph& graph, const PoincareInstance& inst,
                 const InstanceWindows& win, const Eigen::VectorXd& u) {
  if (u.size() != graph.vertex_count())
    throw InputError("lhs_value: u must live on the whole graph");
  double mass = 0.0, mean = 0.0;
  for (int v : win.lhs_ball) {
    mass += graph.measure_vector()[v];
    mean += u[v] * graph.measure_vector()[v];
  }
  mean /= mass;
  double total = 0.0;
  for (int v : win.lhs_ball)
    total += power_sigma(std::abs(u[v] - mean), inst.sigma) * graph.measure_vector()[v];
  return total;
}

double rhs_value(const MeasuredGraph& graph, const PoincareInstance& inst,
                 const InstanceWindows& win, const Eigen::VectorXd& u) {
  if (u.size() != graph.vertex_count())
    throw InputError("rhs_value: u must live on the whole graph");
  double total = 0.0;
  for (int v : win.rhs_ball) {
    double sq = 0.0;
    for (int w : graph.neighbors(v)) {
      const double d = u[v] - u[w];
      sq += d * d;
    }
    total += power_sigma(std::sqrt(sq), inst.sigma) * graph.measure_vector()[v];
  }
  return total;
}

OptimalResult optimal_constant_sigma2(const MeasuredGraph& graph,
                                      const PoincareInstance& inst) {
  if (inst.sigma != 2.0)
    throw InputError("optimal_constant_sigma2: sigma must be 2");
  const InstanceWindows win = make_windows(graph, inst);
  const int nd = static_cast<int>(win.domain.size());
  if (nd < 2)
    throw InputError("optimal_constant_sigma2: domain admits only constants");

  std::vector<int> local(graph.vertex_count(), -1);
  for (int i = 0; i < nd; ++i) local[win.domain[i]] = i;

  // connectivity of the gradient form's support (edges incident to the rhs ball)
  {
    std::vector<char> in_rhs(graph.vertex_count(), 0);
    for (int v : win.rhs_ball) in_rhs[v] = 1;
    std::vector<char> seen(nd, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      const int v = win.domain[i];
      for (int w : graph.neighbors(v)) {
        if (!in_rhs[v] && !in_rhs[w]) continue;
        const int j = local[w];
        if (j >= 0 && !seen[j]) {
          seen[j] = 1;
          ++reached;
          stack.push_back(j);
        }
      }
    }
    if (reached != nd)
      throw InputError("optimal_constant_sigma2: disconnected domain (gradient form "
                       "kernel larger than constants)");
  }

  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(nd, nd);
  {
    double mass = 0.0;
    for (int v : win.lhs_ball) mass += graph.measure_vector()[v];
    for (int a : win.lhs_ball) {
      const int i = local[a];
      N(i, i) += graph.measure_vector()[a];
      for (int b : win.lhs_ball) {
        N(i, local[b]) -= graph.measure_vector()[a] * graph.measure_vector()[b] / mass;
      }
    }
  }
  Eigen::MatrixXd Dm = Eigen::MatrixXd::Zero(nd, nd);
  for (int v : win.rhs_ball) {
    const int i = local[v];
    const double nv = graph.measure_vector()[v];
    for (int w : graph.neighbors(v)) {
      const int j = local[w];
      Dm(i, i) += nv;
      Dm(j, j) += nv;
      Dm(i, j) -= nv;
      Dm(j, i) -= nv;
    }
  }

  // joint scaling keeps the pencil ratio while taming the Cholesky factor
  const double scale = std::max(N.cwiseAbs().maxCoeff(), Dm.cwiseAbs().maxCoeff());
  Eigen::MatrixXd Ns = N / scale;
  Eigen::MatrixXd Ds = Dm / scale;

  // orthonormal basis of the complement of constants
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(nd);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd Qc = Q.rightCols(nd - 1);

  Eigen::MatrixXd Nt = Qc.transpose() * Ns * Qc;
  Eigen::MatrixXd Dt = Qc.transpose() * Ds * Qc;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(Nt, Dt);
  if (solver.info() != Eigen::Success)
    throw NumericalError("optimal_constant_sigma2: generalized eigensolver failed "
                         "(info = " + std::to_string(solver.info()) + ")");
  const int last = nd - 2;
  const double theta = solver.eigenvalues()[last];
  Eigen::VectorXd u_dom = Qc * solver.eigenvectors().col(last);
  u_dom.normalize();

  OptimalResult result;
  result.value = theta;
  result.residual = (N * u_dom - theta * (Dm * u_dom)).norm();
  result.extremal = Eigen::VectorXd::Zero(graph.vertex_count());
  for (int i = 0; i < nd; ++i) result.extremal[win.domain[i]] = u_dom[i];
  if (result.residual > 1e-6)
    throw NumericalError("optimal_constant_sigma2: stationarity residual " +
                         format_double(result.residual));
  return result;
}

std::vector<Family> all_families() {
  return {Family::RandomGaussian, Family::DistanceFromPoint, Family::IndicatorSmoothed,
          Family::Sigma2Extremal};
}

std::string to_string(Family f) {
  switch (f) {
    case Family::RandomGaussian: return "random-gaussian";
    case Family::DistanceFromPoint: return "distance-from-point";
    case Family::IndicatorSmoothed: return "indicator-smoothed";
    case Family::Sigma2Extremal: return "sigma2-extremal";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "random-gaussian") return Family::RandomGaussian;
  if (s == "distance-from-point") return Family::DistanceFromPoint;
  if (s == "indicator-smoothed") return Family::IndicatorSmoothed;
  if (s == "sigma2-extremal") return Family::Sigma2Extremal;
  throw InputError("unknown candidate family '" + s + "'");
}

namespace {

struct RatioEvaluator {
  const MeasuredGraph& graph;
  const PoincareInstance& inst;
  const InstanceWindows& win;

  // lhs/rhs, or -1 when the candidate is degenerate (zero gradient)
  double operator()(const Eigen::VectorXd& u) const {
    const double rhs = rhs_value(graph, inst, win, u);
    if (!(rhs > 0.0)) return -1.0;
    return lhs_value(graph, inst, win, u) / rhs;
  }
};

} // namespace

EmpiricalResult empirical_constant(const MeasuredGraph& graph,
                                   const PoincareInstance& inst,
                                   const EmpiricalOptions& options) {
  if (options.trials < 1) throw InputError("empirical_constant: trials must be >= 1");
  if (options.families.empty())
    throw InputError("empirical_constant: no candidate families selected");
  const InstanceWindows win = make_windows(graph, inst);
  const RatioEvaluator ratio{graph, inst, win};
  const int n = graph.vertex_count();

  EmpiricalResult best;
  best.value = -1.0;
  auto consider = [&](const Eigen::VectorXd& u, const char* family) {
    const double r = ratio(u);
    if (r > best.value) {
      best.value = r;
      best.argmax = u;
      best.family = family;
    }
  };

  Rng rng(options.seed);
  for (Family family : options.families) {
    switch (family) {
      case Family::RandomGaussian: {
        Rng stream = rng.fork(1);
        for (int t = 0; t < options.trials; ++t) {
          Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
          for (int v : win.domain) u[v] = stream.next_normal();
          consider(u, "random-gaussian");
        }
        break;
      }
      case Family::DistanceFromPoint: {
        Rng stream = rng.fork(2);
        std::vector<int> sources{inst.center};
        const int extra = std::min<int>(options.trials, 8);
        for (int t = 0; t < extra; ++t)
          sources.push_back(win.domain[stream.next_below(win.domain.size())]);
        for (int p : sources) {
          const auto dist = bfs_distances(graph, p);
          Eigen::VectorXd u(n);
          for (int v = 0; v < n; ++v) u[v] = dist[v];
          consider(u, "distance-from-point");
        }
        break;
      }
      case Family::IndicatorSmoothed: {
        Rng stream = rng.fork(3);
        const auto dist_c = bfs_distances(graph, inst.center);
        const int maxt = static_cast<int>(std::floor(inst.R));
        for (int t = 0; t <= maxt; ++t) {
          for (int width = 1; width <= 2; ++width) {
            Eigen::VectorXd u(n);
            for (int v = 0; v < n; ++v) {
              const double over = std::max(0.0, static_cast<double>(dist_c[v] - t));
              u[v] = std::max(0.0, 1.0 - over / width);
            }
            consider(u, "indicator-smoothed");
          }
        }
        const int random_indicators = std::min<int>(options.trials, 16);
        for (int t = 0; t < random_indicators; ++t) {
          const int p = win.lhs_ball[stream.next_below(win.lhs_ball.size())];
          const int radius = static_cast<int>(stream.next_below(2));
          const auto dist_p = bfs_distances(graph, p);
          Eigen::VectorXd u(n);
          for (int v = 0; v < n; ++v) {
            const double over = std::max(0.0, static_cast<double>(dist_p[v] - radius));
            u[v] = std::max(0.0, 1.0 - over);
          }
          consider(u, "indicator-smoothed");
        }
        break;
      }
      case Family::Sigma2Extremal: {
        PoincareInstance quadratic = inst;
        quadratic.sigma = 2.0;
        try {
          const OptimalResult opt = optimal_constant_sigma2(graph, quadratic);
          consider(opt.extremal, "sigma2-extremal");
        } catch (const InputError&) {
          // degenerate domain: the family contributes nothing
        }
        break;
      }
    }
  }

  if (best.value < 0.0)
    throw InputError("empirical_constant: degenerate family (every candidate has zero "
                     "gradient)");

  if (options.local_ascent &&
      static_cast<int>(win.domain.size()) <= options.ascent_domain_cap) {
    Eigen::VectorXd u = best.argmax;
    const double span = u.maxCoeff() - u.minCoeff();
    if (span > 0) u /= span; // normalized ascent steps
    double current = ratio(u);
    for (double h : {0.5, 0.125, 0.03125}) {
      for (int pass = 0; pass < 2; ++pass) {
        for (int v : win.domain) {
          for (double dir : {+1.0, -1.0}) {
            u[v] += dir * h;
            const double r = ratio(u);
            if (r > current) {
              current = r;
            } else {
              u[v] -= dir * h;
            }
          }
        }
      }
    }
    if (current > best.value) {
      best.value = current;
      best.argmax = u;
      best.family += "+ascent";
    }
  }
  return best;
}

double ploc_estimate(const MeasuredGraph& graph, double r0, double L, double sigma,
                     const EmpiricalOptions& options) {
  if (!(r0 >= 1.0)) throw InputError("ploc_estimate: r0 must be >= 1");
  if (!(L >= 1.0)) throw InputError("ploc_estimate: L must be >= 1");
  if (!(sigma >= 1.0)) throw InputError("ploc_estimate: sigma must be >= 1");
  const int n = graph.vertex_count();
  const int r_max = static_cast<int>(std::floor(r0));
  std::vector<double> worst(n, 0.0);
  parallel_for(n, [&](std::int64_t x) {
    double best = 0.0;
    for (int R = 1; R <= r_max; ++R) {
      PoincareInstance inst{static_cast<int>(x), static_cast<double>(R), sigma, L};
      double value;
      if (sigma == 2.0) {
        value = optimal_constant_sigma2(graph, inst).value;
      } else {
        EmpiricalOptions opts = options;
        opts.seed = Rng(options.seed).fork(1000003ULL * x + R).next_u64();
        value = empirical_constant(graph, inst, opts).value;
      }
      best = std::max(best, value);
    }
    worst[x] = best;
  });
  return *std::max_element(worst.begin(), worst.end());
}

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::GraphStrong: return "graph-strong";
    case BoundKind::GraphLowerVertex: return "graph-lower-vertex";
    case BoundKind::Main: return "main";
    case BoundKind::Doubling: return "doubling";
    case BoundKind::Main2: return "main2";
    case BoundKind::CayleyHyperbolic: return "cayley-hyperbolic";
    case BoundKind::HyperbolicSpace: return "hyperbolic-space";
    case BoundKind::Covering: return "covering";
  }
  return "?";
}

BoundKind bound_kind_from_string(const std::string& s) {
  if (s == "graph-strong") return BoundKind::GraphStrong;
  if (s == "graph-lower-vertex") return BoundKind::GraphLowerVertex;
  if (s == "main") return BoundKind::Main;
  if (s == "doubling") return BoundKind::Doubling;
  if (s == "main2") return BoundKind::Main2;
  if (s == "cayley-hyperbolic") return BoundKind::CayleyHyperbolic;
  if (s == "hyperbolic-space") return BoundKind::HyperbolicSpace;
  if (s == "covering") return BoundKind::Covering;
  throw InputError("unknown bound kind '" + s + "'");
}

GrowthInput GrowthInput::table(GrowthProfile profile) {
  GrowthInput g;
  g.profile_ = std::move(profile);
  return g;
}

GrowthInput GrowthInput::power(double coef, double exponent) {
  if (!(coef > 0.0)) throw InputError("GrowthInput::power: coefficient must be positive");
  GrowthInput g;
  g.coef_ = coef;
  g.exponent_ = exponent;
  return g;
}

double GrowthInput::value_at(double r) const {
  if (profile_) return profile_->value_at(r);
  return coef_ * std::pow(r, exponent_);
}

const GrowthProfile& GrowthInput::profile() const {
  if (!profile_) throw InputError("GrowthInput: no tabulated profile");
  return *profile_;
}

namespace {

double need(double v, const char* name) {
  if (std::isnan(v)) throw InputError(std::string("bound parameter '") + name +
                                      "' is required and was not supplied");
  return v;
}

const GrowthInput& need(const std::optional<GrowthInput>& g, const char* name) {
  if (!g) throw InputError(std::string("bound parameter '") + name +
                           "' is required and was not supplied");
  return *g;
}

} // namespace

BoundEvaluation bound_evaluate(const BoundSpec& spec, double R, double sigma,
                               bool allow_out_of_regime) {
  if (!(sigma >= 1.0)) throw InputError("bound_evaluate: sigma must be >= 1");
  if (!(R > 0.0)) throw InputError("bound_evaluate: R must be positive");
  BoundEvaluation out;
  const double two_sigma = std::pow(2.0, sigma);

  switch (spec.kind) {
    case BoundKind::GraphStrong: {
      const GrowthInput& f = need(spec.f, "f");
      out.valid_R_min = 1.0;
      out.prefactor = two_sigma;
      out.value = two_sigma * std::pow(R, sigma - 1.0) * f.value_at(2.0 * R);
      break;
    }
    case BoundKind::GraphLowerVertex: {
      const GrowthInput& f = need(spec.f, "f");
      const double c = need(spec.c, "c");
      out.valid_R_min = 1.0;
      out.prefactor = two_sigma * c;
      out.value = two_sigma * c * std::pow(R, sigma - 1.0) * f.value_at(R);
      break;
    }
    case BoundKind::Main: {
      const GrowthInput& f = need(spec.f, "f");
      const double C = need(spec.C, "C");
      const double L = need(spec.L, "L");
      const double lambda = f.value_at(7.5) + 1.0;
      const double C0 = std::pow(2.0, 4.0 * sigma) * C * std::pow(f.value_at(3.5), sigma + 2.0);
      out.derived["lambda"] = lambda;
      out.derived["C0"] = C0;
      out.valid_R_min = 4.0 * lambda + L;
      out.prefactor = C0;
      out.value = C0 * std::pow(lambda * R, sigma - 1.0) * f.value_at(4.0 * lambda * R);
      break;
    }
    case BoundKind::Doubling: {
      const double C = need(spec.C, "C");
      const double L = need(spec.L, "L");
      const double C0 = need(spec.C0, "C0");
      const double s = std::log(C0) / std::log(2.0);
      const GrowthInput f = GrowthInput::power(C0 * C0, s);
      const double lambda = f.value_at(7.5) + 1.0;
      const double C0_main =
          std::pow(2.0, 4.0 * sigma) * C * std::pow(f.value_at(3.5), sigma + 2.0);
      out.derived["s"] = s;
      out.derived["lambda"] = lambda;
      out.derived["C0"] = C0_main;
      out.valid_R_min = 4.0 * lambda + L;
      out.prefactor = C0_main;
      out.value =
          C0_main * std::pow(lambda * R, sigma - 1.0) * f.value_at(4.0 * lambda * R);
      break;
    }
    case BoundKind::Main2: {
      const GrowthInput& V = need(spec.V, "V");
      const double C = need(spec.C, "C");
      const double L = need(spec.L, "L");
      const double c = need(spec.c, "c");
      const double r0 = need(spec.r0, "r0");
      const double lambda = c * V.value_at(4.5) + 1.0;
      out.derived["lambda"] = lambda;
      out.valid_R_min = std::max(r0, 4.0 * lambda + L);
      out.prefactor = std::pow(2.0, 4.0 * sigma) * c * c * c * C *
                      std::pow(V.value_at(2.5), sigma + 1.0);
      out.value = out.prefactor * std::pow(lambda * R, sigma - 1.0) *
                  V.value_at(2.0 * lambda * R);
      break;
    }
    case BoundKind::CayleyHyperbolic: {
      const double delta = need(spec.delta, "delta");
      const double H = need(spec.H, "H");
      const double c = need(spec.c, "c");
      const double C = need(spec.C, "C");
      const double nur = need(spec.nur, "nur");
      const double r = 10.0 * (1.0 + delta);
      out.derived["r"] = r;
      out.valid_R_min = r;
      out.prefactor = two_sigma * 3.0 * C * nur /
                      (c * std::pow(r, 25.0 / 4.0) * std::exp(48.0 * H * (1.0 + delta)));
      out.value = out.prefactor * std::pow(R, sigma + 21.0 / 4.0) * std::exp(6.0 * H * R);
      break;
    }
    case BoundKind::HyperbolicSpace: {
      const double delta = need(spec.delta, "delta");
      const double D = need(spec.D, "D");
      const double H = need(spec.H, "H");
      const double c = need(spec.c, "c");
      const double C = need(spec.C, "C");
      const double V0 = need(spec.V0, "V0");
      const double r = 7.0 * D + 4.0 * delta;
      if (r < 2.0)
        throw InputError("hyperbolic-space bound requires 7D + 4 delta >= 2");
      const double lambda = c * V0 + 1.0;
      out.derived["r"] = r;
      out.derived["lambda"] = lambda;
      out.valid_R_min = 2.5 * r;
      out.prefactor = std::pow(2.0, 4.0 * (sigma + 3.0 * H * D)) * c * c * c * C *
                      std::pow(V0, sigma + 2.0) /
                      (std::pow(5.0, 6.0 * H * D) *
                       std::pow(r, 25.0 / 4.0 + 6.0 * H * D) *
                       std::exp(H * (83.0 * D + 48.0 * delta)));
      out.value = out.prefactor *
                  std::pow(lambda * R, sigma + 21.0 / 4.0 + 6.0 * H * D) *
                  std::exp(12.0 * lambda * H * R);
      break;
    }
    case BoundKind::Covering: {
      const GrowthInput& F = need(spec.FGamma, "FGamma");
      const double c = need(spec.c, "c");
      const double C = need(spec.C, "C");
      const double V0 = need(spec.V0, "V0");
      const double D = need(spec.D, "D");
      const double L = need(spec.L, "L");
      const double lambda = c * V0 + D;
      out.derived["lambda"] = lambda;
      out.valid_R_min = 4.0 * lambda + L;
      out.prefactor =
          std::pow(2.0, 4.0 * sigma) * c * c * c * C * std::pow(V0, sigma + 2.0);
      out.value = out.prefactor * std::pow(lambda * R, sigma - 1.0) *
                  F.value_at(2.0 * lambda * R);
      break;
    }
  }

  if (R < out.valid_R_min) {
    if (!allow_out_of_regime)
      throw InputError("bound_evaluate: R = " + format_double(R) +
                       " is below the valid regime R >= " +
                       format_double(out.valid_R_min) +
                       " (set the out-of-regime override to evaluate anyway)");
    out.out_of_regime = true;
  }
  return out;
}

VerifyResult verify_bounds(const MeasuredGraph& graph,
                           const std::vector<PoincareInstance>& instances,
                           const BoundSpec& spec, const EmpiricalOptions& options,
                           bool allow_out_of_regime) {
  VerifyResult result;
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const PoincareInstance& inst = instances[idx];
    if ((spec.kind == BoundKind::GraphStrong || spec.kind == BoundKind::GraphLowerVertex) &&
        inst.lambda != 1.0)
      throw InputError("verify_bounds: this bound kind requires lambda = 1");
    const BoundEvaluation eval =
        bound_evaluate(spec, inst.R, inst.sigma, allow_out_of_regime);
    if (eval.derived.count("lambda") &&
        std::abs(eval.derived.at("lambda") - inst.lambda) > 1e-9)
      throw InputError("verify_bounds: instance lambda does not match the bound's "
                       "derived lambda " + format_double(eval.derived.at("lambda")));

    EmpiricalOptions opts = options;
    opts.seed = Rng(options.seed).fork(idx).next_u64();
    const EmpiricalResult emp = empirical_constant(graph, inst, opts);
    const InstanceWindows win = make_windows(graph, inst);

    PoincareReport report;
    report.center = inst.center;
    report.R = inst.R;
    report.sigma = inst.sigma;
    report.lambda = inst.lambda;
    report.empirical = emp.value;
    if (inst.sigma == 2.0)
      report.optimal = optimal_constant_sigma2(graph, inst).value;
    report.bound = eval.value;
    report.ratio = emp.value / eval.value;
    if (win.truncated) report.flags.push_back("truncated");
    if (eval.out_of_regime) report.flags.push_back("out-of-regime");
    report.violation = !eval.out_of_regime && report.ratio > 1.0 + 1e-9;
    if (report.violation) result.any_violation = true;
    result.reports.push_back(std::move(report));
  }
  return result;
}

RandomSuiteResult random_theorem_suite(BoundKind kind, const RandomSuiteOptions& options) {
  if (kind != BoundKind::GraphStrong && kind != BoundKind::GraphLowerVertex)
    throw InputError("random_theorem_suite: only the two graph theorems have "
                     "randomized suites");
  if (options.graphs < 1 || options.max_vertices < 2 || options.u_per_graph < 1)
    throw InputError("random_theorem_suite: bad suite size");

  struct PerGraph {
    std::int64_t cells = 0;
    std::int64_t violations = 0;
    double worst = 0.0;
  };
  std::vector<PerGraph> partial(options.graphs);
  Rng master(options.seed);
  std::vector<std::uint64_t> graph_seeds(options.graphs);
  for (int g = 0; g < options.graphs; ++g) graph_seeds[g] = master.next_u64();

  parallel_for(options.graphs, [&](std::int64_t gi) {
    Rng rng(graph_seeds[gi]);
    const int n = 2 + static_cast<int>(rng.next_below(options.max_vertices - 1));
    const double extra = rng.next_double() * 1.5;
    const MeasuredGraph graph = random_connected_graph(rng, n, extra, options.measure_lo,
                                                       options.measure_hi);

    std::vector<std::vector<int>> dist(n);
    int diam = 0;
    for (int v = 0; v < n; ++v) {
      dist[v] = bfs_distances(graph, v);
      diam = std::max(diam, *std::max_element(dist[v].begin(), dist[v].end()));
    }

    const GrowthMode mode =
        kind == BoundKind::GraphStrong ? GrowthMode::VertexRatio : GrowthMode::Absolute;
    const int table_max = kind == BoundKind::GraphStrong ? 2 * diam : diam;
    const GrowthProfile f = growth_function(graph, integer_radii(std::max(table_max, 2)), mode);
    double c_inv = 0.0; // 1 / min nu(x)
    if (kind == BoundKind::GraphLowerVertex)
      c_inv = 1.0 / graph.measure_vector().minCoeff();

    std::vector<Eigen::VectorXd> us;
    for (int t = 0; t < options.u_per_graph; ++t) {
      Eigen::VectorXd u(n);
      for (int v = 0; v < n; ++v) u[v] = rng.next_normal();
      us.push_back(std::move(u));
    }

    PerGraph& acc = partial[gi];
    std::vector<double> grad_pow(n);
    std::vector<std::vector<int>> buckets;
    for (const Eigen::VectorXd& u : us) {
      const Eigen::VectorXd grads = gradient_norms(graph, u);
      for (double sigma : options.sigmas) {
        for (int v = 0; v < n; ++v)
          grad_pow[v] = power_sigma(grads[v], sigma) * graph.measure_vector()[v];
        for (int p = 0; p < n; ++p) {
          const int ecc = *std::max_element(dist[p].begin(), dist[p].end());
          buckets.assign(ecc + 1, {});
          for (int v = 0; v < n; ++v) buckets[dist[p][v]].push_back(v);
          double mass = 0.0, mean_num = 0.0, rhs = 0.0;
          std::vector<int> ball_so_far;
          for (int Rint = 0; Rint <= std::min(ecc, diam); ++Rint) {
            for (int v : buckets[Rint]) {
              mass += graph.measure_vector()[v];
              mean_num += u[v] * graph.measure_vector()[v];
              rhs += grad_pow[v];
              ball_so_far.push_back(v);
            }
            if (Rint < 1) continue;
            const double R = Rint;
            const double mean = mean_num / mass;
            double lhs = 0.0;
            for (int v : ball_so_far)
              lhs += power_sigma(std::abs(u[v] - mean), sigma) *
                     graph.measure_vector()[v];
            const double constant =
                kind == BoundKind::GraphStrong
                    ? std::pow(2.0, sigma) * std::pow(R, sigma - 1.0) * f.value_at(2.0 * R)
                    : std::pow(2.0, sigma) * c_inv * std::pow(R, sigma - 1.0) *
                          f.value_at(R);
            const double bound = constant * rhs;
            acc.cells += 1;
            const double ratio = bound > 0 ? lhs / bound : (lhs > 0 ? 2.0 : 0.0);
            acc.worst = std::max(acc.worst, ratio);
            if (lhs > bound * (1.0 + 1e-12)) acc.violations += 1;
          }
        }
      }
    }
  });

  RandomSuiteResult result;
  for (const PerGraph& p : partial) {
    result.cells_checked += p.cells;
    result.violations += p.violations;
    result.worst_ratio = std::max(result.worst_ratio, p.worst);
  }
  return result;
}

} // namespace poincare
} // namespace poincarekit
