#include "poincarekit/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "poincarekit/errors.hpp"
#include "poincarekit/mmgraph.hpp"
#include "poincarekit/util.hpp"

namespace poincarekit {
namespace discretize {

namespace {

void bfs_row(const MeasuredGraph& g, int source, std::vector<int>& dist,
             std::vector<int>& queue) {
  dist.assign(g.vertex_count(), -1);
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
}

void require_ratio_mode(const GrowthProfile& f) {
  if (f.mode() == GrowthMode::Absolute)
    throw InputError("this check needs a ratio-mode growth profile (eqmain form)");
}

} // namespace

int Net::quotient_hops(double R) const {
  if (R < 0.0) throw InputError("negative radius");
  return static_cast<int>(std::floor(R / epsilon + 1e-9));
}

Net build_net(const MeasuredGraph& host, double epsilon) {
  if (!(epsilon >= 1.0)) throw InputError("build_net: epsilon must be >= 1");
  const int n = host.vertex_count();

  // greedy scan in ascending id order: admit iff >= epsilon from every center
  std::vector<int> nearest(n, std::numeric_limits<int>::max());
  std::vector<int> centers;
  std::vector<int> dist, queue;
  for (int v = 0; v < n; ++v) {
    if (static_cast<double>(nearest[v]) < epsilon) continue;
    centers.push_back(v);
    bfs_row(host, v, dist, queue);
    for (int w = 0; w < n; ++w) nearest[w] = std::min(nearest[w], dist[w]);
  }

  const int k = static_cast<int>(centers.size());
  const int cover_hops = static_cast<int>(std::floor(epsilon));
  std::vector<std::pair<int, int>> edges;
  Eigen::VectorXd nu(k);
  std::vector<std::string> labels(k);
  std::vector<std::vector<int>> assignment(n);
  std::vector<Eigen::Triplet<double>> mean_entries;

  std::vector<int> center_index(n, -1);
  for (int i = 0; i < k; ++i) center_index[centers[i]] = i;

  for (int i = 0; i < k; ++i) {
    bfs_row(host, centers[i], dist, queue);
    double mass = 0.0;
    for (int w = 0; w < n; ++w) {
      if (dist[w] <= cover_hops) {
        mass += host.measure_vector()[w];
        assignment[w].push_back(i);
      }
      const int j = center_index[w];
      if (j >= 0 && j != i) {
        if (static_cast<double>(dist[w]) < epsilon)
          throw InvariantViolation("net separation failed between centers " +
                                   std::to_string(centers[i]) + " and " +
                                   std::to_string(w));
        if (j > i && static_cast<double>(dist[w]) < 2.0 * epsilon)
          edges.emplace_back(i, j);
      }
    }
    nu[i] = mass;
    labels[i] = std::to_string(centers[i]);
    for (int w = 0; w < n; ++w)
      if (dist[w] <= cover_hops)
        mean_entries.emplace_back(i, w, host.measure_vector()[w] / mass);
  }

  for (int v = 0; v < n; ++v)
    if (assignment[v].empty())
      throw InvariantViolation("net covering failed at host vertex " + std::to_string(v));

  MeasuredGraph quotient = [&]() {
    try {
      return MeasuredGraph::from_edges(k, edges, nu, labels);
    } catch (const InputError& e) {
      // impossible for eps >= 1 on connected hosts
      throw InvariantViolation(std::string("net quotient construction failed: ") +
                               e.what());
    }
  }();

  Eigen::SparseMatrix<double> mean_op(k, n);
  mean_op.setFromTriplets(mean_entries.begin(), mean_entries.end());

  return Net{host, epsilon, std::move(centers), std::move(quotient),
             std::move(assignment), std::move(mean_op)};
}

MultiplicityReport covering_multiplicity(const Net& net, double L,
                                         const GrowthProfile& f_host) {
  if (!(L >= 1.0)) throw InputError("covering_multiplicity: L must be >= 1");
  require_ratio_mode(f_host);
  const int n = net.host.vertex_count();
  const int hops = static_cast<int>(std::floor(L * net.epsilon));
  std::vector<int> count(n, 0);
  std::vector<int> dist, queue;
  for (int c : net.centers) {
    bfs_row(net.host, c, dist, queue);
    for (int w = 0; w < n; ++w)
      if (dist[w] <= hops) ++count[w];
  }
  MultiplicityReport report;
  report.multiplicity = *std::max_element(count.begin(), count.end());
  report.query_radius = 3.0 * L * net.epsilon + 0.5;
  report.bound = f_host.value_at(report.query_radius);
  if (report.multiplicity > report.bound)
    throw InvariantViolation("covering multiplicity " +
                             std::to_string(report.multiplicity) + " exceeds bound " +
                             format_double(report.bound));
  return report;
}

QiReport qi_distortion_check(const Net& net, const GrowthProfile& f_host,
                             const QiOptions& options) {
  require_ratio_mode(f_host);
  const int k = net.quotient.vertex_count();
  QiReport report;
  report.f_value = f_host.value_at(6.0 * net.epsilon + 0.5);

  std::vector<int> hdist, hqueue, qdist, qqueue;
  auto check_pair = [&](int i, int j, int host_d, int q_hops) {
    const double d = host_d;
    const double rho = q_hops * net.epsilon;
    ++report.pairs_checked;
    if (i == j) return;
    const double lower = d / (2.0 * rho);
    const double upper = rho / (report.f_value * (d + 2.0 * net.epsilon));
    report.worst_lower = std::max(report.worst_lower, lower);
    report.worst_upper = std::max(report.worst_upper, upper);
    if (lower > 1.0 + 1e-12) {
      report.any_violation = true;
      report.violations.push_back({i, j, d, rho, "d <= 2 rho"});
    }
    if (upper > 1.0 + 1e-12) {
      report.any_violation = true;
      report.violations.push_back({i, j, d, rho, "2 rho <= 2 f (d + 2 eps)"});
    }
  };

  if (options.all_pairs) {
    for (int i = 0; i < k; ++i) {
      bfs_row(net.host, net.centers[i], hdist, hqueue);
      bfs_row(net.quotient, i, qdist, qqueue);
      for (int j = i + 1; j < k; ++j)
        check_pair(i, j, hdist[net.centers[j]], qdist[j]);
    }
  } else {
    if (options.sample_count <= 0)
      throw InputError("qi_distortion_check: sample mode needs a positive count");
    Rng rng(options.seed);
    for (std::int64_t s = 0; s < options.sample_count; ++s) {
      const int i = static_cast<int>(rng.next_below(k));
      const int j = static_cast<int>(rng.next_below(k));
      if (i == j) continue;
      bfs_row(net.host, net.centers[i], hdist, hqueue);
      bfs_row(net.quotient, i, qdist, qqueue);
      check_pair(i, j, hdist[net.centers[j]], qdist[j]);
    }
  }
  return report;
}

TransferReport volume_transfer_check(const Net& net, const std::vector<double>& R_values,
                                     const GrowthProfile& f_host) {
  if (R_values.empty()) throw InputError("volume_transfer_check: empty R range");
  require_ratio_mode(f_host);
  const int k = net.quotient.vertex_count();
  const int n = net.host.vertex_count();
  const double eps = net.epsilon;
  const double f_eps = f_host.value_at(eps);
  const double f_qi = f_host.value_at(6.0 * eps + 0.5);

  struct Agg {
    double lhs = 0, rhs = 0, ratio = -1;
    bool saturated_all = true;
    bool present = false;
  };
  const std::vector<std::string> names = {"vol-a", "vol-a-proof", "vol-b", "vol-c",
                                          "vol-d"};
  std::vector<std::vector<Agg>> agg(names.size(), std::vector<Agg>(R_values.size()));

  auto update = [&](std::size_t which, std::size_t ri, double lhs, double rhs,
                    bool saturated) {
    Agg& a = agg[which][ri];
    const double ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? std::numeric_limits<double>::infinity() : 0.0);
    if (ratio > a.ratio) {
      a.ratio = ratio;
      a.lhs = lhs;
      a.rhs = rhs;
    }
    a.saturated_all = a.saturated_all && saturated;
    a.present = true;
  };

  std::vector<int> hdist, hqueue, qdist, qqueue;
  for (int x = 0; x < k; ++x) {
    bfs_row(net.host, net.centers[x], hdist, hqueue);
    bfs_row(net.quotient, x, qdist, qqueue);
    const int host_ecc = *std::max_element(hdist.begin(), hdist.end());
    const int q_ecc = *std::max_element(qdist.begin(), qdist.end());

    std::vector<double> host_cum(host_ecc + 1, 0.0);
    for (int w = 0; w < n; ++w) host_cum[hdist[w]] += net.host.measure_vector()[w];
    for (int d = 1; d <= host_ecc; ++d) host_cum[d] += host_cum[d - 1];
    std::vector<double> q_cum(q_ecc + 1, 0.0);
    for (int y = 0; y < k; ++y) q_cum[qdist[y]] += net.quotient.measure_vector()[y];
    for (int d = 1; d <= q_ecc; ++d) q_cum[d] += q_cum[d - 1];

    auto host_ball = [&](double R) {
      return host_cum[std::min<int>(static_cast<int>(std::floor(R)), host_ecc)];
    };
    auto q_ball = [&](double R, bool& saturated) {
      const int hops = net.quotient_hops(R);
      saturated = hops >= q_ecc;
      return q_cum[std::min(hops, q_ecc)];
    };

    for (std::size_t ri = 0; ri < R_values.size(); ++ri) {
      const double R = R_values[ri];
      if (R < 0) throw InputError("volume_transfer_check: negative radius");
      bool sat = false;
      const double nu_R = q_ball(R, sat);
      // (a) nu(B_Y(x,R)) <= f(eps) mu(B_X(x, 2R + 1/2)), plus the proof-line
      // variant with radius 2R + 1
      update(0, ri, nu_R, f_eps * host_ball(2.0 * R + 0.5), false);
      update(1, ri, nu_R, f_eps * host_ball(2.0 * R + 1.0), false);
      // (b) nu(B_Y(x,R)) / nu(x) <= f(eps) f(2R + 1/2)
      update(2, ri, nu_R / net.quotient.measure_vector()[x],
             f_eps * f_host.value_at(2.0 * R + 0.5), false);
      // (c) mu(B_X(x,R)) <= nu(B_Y(x,R')) with R' = f(6 eps + 1/2)(R + 3 eps)
      const double Rp = f_qi * (R + 3.0 * eps);
      bool sat_c = false;
      const double nu_Rp = q_ball(Rp, sat_c);
      update(3, ri, host_ball(R), nu_Rp, sat_c);
      // (d) half-ball ratio transfer
      update(4, ri, host_ball(R) / net.host.measure_vector()[net.centers[x]],
             f_eps * nu_Rp / net.quotient.measure_vector()[x], sat_c);
    }
  }

  TransferReport report;
  for (std::size_t w = 0; w < names.size(); ++w) {
    for (std::size_t ri = 0; ri < R_values.size(); ++ri) {
      const Agg& a = agg[w][ri];
      if (!a.present) continue;
      TransferRow row;
      row.name = names[w];
      row.R = R_values[ri];
      row.lhs = a.lhs;
      row.rhs = a.rhs;
      row.ratio = a.ratio;
      row.flag = a.saturated_all ? "saturated" : "";
      if (row.flag.empty() && row.ratio > 1.0 + 1e-12) report.any_violation = true;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

GradientCheckReport discretized_gradient_check(const Net& net, const Eigen::VectorXd& u,
                                               int center_index, double R, double sigma,
                                               double C_loc, double L,
                                               const GrowthProfile& f_host) {
  if (u.size() != net.host.vertex_count())
    throw InputError("discretized_gradient_check: u must live on the host");
  if (center_index < 0 || center_index >= net.quotient.vertex_count())
    throw InputError("discretized_gradient_check: unknown center");
  if (!(sigma >= 1.0) || !(L >= 1.0) || !(C_loc > 0.0) || R < 0.0)
    throw InputError("discretized_gradient_check: bad parameters");
  require_ratio_mode(f_host);
  const double eps = net.epsilon;

  const Eigen::VectorXd u_tilde = net.mean_operator * u;
  const Eigen::VectorXd grad_q = gradient_norms(net.quotient, u_tilde);
  const Eigen::VectorXd grad_h = gradient_norms(net.host, u);

  const int q_hops = net.quotient_hops(R);
  const auto qdist = bfs_distances(net.quotient, center_index);
  double lhs_pow = 0.0;
  for (int y = 0; y < net.quotient.vertex_count(); ++y)
    if (qdist[y] <= q_hops)
      lhs_pow += std::pow(grad_q[y], sigma) * net.quotient.measure_vector()[y];

  const double window = R + (L + 2.0) * eps;
  const auto hdist = bfs_distances(net.host, net.centers[center_index]);
  const int w_hops = static_cast<int>(std::floor(window));
  double rhs_pow = 0.0;
  for (int z = 0; z < net.host.vertex_count(); ++z)
    if (hdist[z] <= w_hops)
      rhs_pow += std::pow(grad_h[z], sigma) * net.host.measure_vector()[z];

  GradientCheckReport report;
  report.window_radius = window;
  report.lhs_norm = std::pow(lhs_pow, 1.0 / sigma);
  report.rhs_norm = std::pow(rhs_pow, 1.0 / sigma);
  report.constant = 2.0 * std::pow(C_loc, 1.0 / sigma) * f_host.value_at(3.0 * eps + 0.5) *
                    std::pow(f_host.value_at(3.0 * eps), 1.0 / sigma);
  report.truncated = window_truncated(net.host, net.centers[center_index], window);
  const double bound = report.constant * report.rhs_norm;
  report.ratio = bound > 0 ? report.lhs_norm / bound : (report.lhs_norm > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  report.violation = !report.truncated && report.lhs_norm > bound * (1.0 + 1e-9);
  return report;
}

} // namespace discretize
} // namespace poincarekit
