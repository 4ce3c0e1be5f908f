#include "oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace oracles {

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int source) {
  std::vector<int> dist(adj.size(), -1);
  std::vector<int> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::int64_t> free_ball_sizes(int rank, int R) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier{{}};
  seen.insert({});
  std::vector<std::int64_t> sizes{1};
  for (int level = 1; level <= R; ++level) {
    std::vector<std::vector<int>> next;
    for (const auto& word : frontier) {
      for (int g = 1; g <= rank; ++g) {
        for (int s : {g, -g}) {
          std::vector<int> w = word;
          if (!w.empty() && w.back() == -s)
            w.pop_back();
          else
            w.push_back(s);
          if (seen.insert(w).second) next.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
    sizes.push_back(static_cast<std::int64_t>(seen.size()));
  }
  return sizes;
}

std::vector<std::int64_t> abelian_ball_sizes(int rank, int R) {
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::vector<std::int64_t>> frontier{std::vector<std::int64_t>(rank, 0)};
  seen.insert(frontier[0]);
  std::vector<std::int64_t> sizes{1};
  for (int level = 1; level <= R; ++level) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& vec : frontier) {
      for (int g = 0; g < rank; ++g) {
        for (int s : {1, -1}) {
          auto w = vec;
          w[g] += s;
          if (seen.insert(w).second) next.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
    sizes.push_back(static_cast<std::int64_t>(seen.size()));
  }
  return sizes;
}

std::vector<std::int64_t> heisenberg_ball_sizes(int R) {
  using Mat = std::array<std::int64_t, 9>;
  auto mul = [](const Mat& a, const Mat& b) {
    Mat c{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        std::int64_t s = 0;
        for (int k = 0; k < 3; ++k) s += a[i * 3 + k] * b[k * 3 + j];
        c[i * 3 + j] = s;
      }
    return c;
  };
  const Mat id{1, 0, 0, 0, 1, 0, 0, 0, 1};
  const Mat x{1, 1, 0, 0, 1, 0, 0, 0, 1};
  const Mat xinv{1, -1, 0, 0, 1, 0, 0, 0, 1};
  const Mat y{1, 0, 0, 0, 1, 1, 0, 0, 1};
  const Mat yinv{1, 0, 0, 0, 1, -1, 0, 0, 1};
  const std::vector<Mat> gens{x, xinv, y, yinv};

  std::set<Mat> seen{id};
  std::vector<Mat> frontier{id};
  std::vector<std::int64_t> sizes{1};
  for (int level = 1; level <= R; ++level) {
    std::vector<Mat> next;
    for (const auto& m : frontier)
      for (const auto& g : gens) {
        const Mat c = mul(m, g);
        if (seen.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
    sizes.push_back(static_cast<std::int64_t>(seen.size()));
  }
  return sizes;
}

std::int64_t closed_form_free2(int R) {
  std::int64_t p = 1;
  for (int i = 0; i < R; ++i) p *= 3;
  return 2 * p - 1;
}

std::int64_t closed_form_abelian2(int R) {
  return 2LL * R * R + 2LL * R + 1;
}

std::int64_t closed_form_theta(int R) {
  std::int64_t p = 1;
  for (int i = 0; i < R; ++i) p *= 2;
  return 3 * p - 2;
}

WalkCounts nonbacktracking_walks(int vertex_count,
                                 const std::vector<std::array<int, 2>>& edges, int base,
                                 int max_length) {
  (void)vertex_count;
  // dart d = 2k or 2k+1 for edge k; head and reverse as in the library, but the
  // enumeration below is an explicit depth-first recursion
  auto head = [&](int d) { return d % 2 == 0 ? edges[d / 2][1] : edges[d / 2][0]; };
  auto tail = [&](int d) { return d % 2 == 0 ? edges[d / 2][0] : edges[d / 2][1]; };

  WalkCounts counts;
  counts.total.assign(max_length + 1, 0);
  counts.to_base.assign(max_length + 1, 0);
  counts.total[0] = 1;
  counts.to_base[0] = 1;

  struct Frame {
    int at;
    int last_dart;
    int length;
  };
  std::vector<Frame> stack{{base, -1, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.length == max_length) continue;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      for (int d : {static_cast<int>(2 * k), static_cast<int>(2 * k + 1)}) {
        if (tail(d) != f.at) continue;
        if (f.last_dart >= 0 && d == (f.last_dart ^ 1)) continue;
        const int to = head(d);
        counts.total[f.length + 1] += 1;
        if (to == base) counts.to_base[f.length + 1] += 1;
        stack.push_back({to, d, f.length + 1});
      }
    }
  }
  return counts;
}

double pencil_max_eigenvalue(const Eigen::MatrixXd& N, const Eigen::MatrixXd& D) {
  const int n = static_cast<int>(N.rows());
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::MatrixXd Dreg = D + ones * ones.transpose();
  Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> solver(N, Dreg);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("oracle QZ solver failed");
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto alpha = solver.alphas()[i];
    const double beta = solver.betas()[i];
    if (std::abs(alpha.imag()) > 1e-9 * std::abs(alpha.real())) continue;
    if (std::abs(beta) < 1e-14) continue;
    best = std::max(best, alpha.real() / beta);
  }
  return best;
}

double cycle_optimal_constant(int n) {
  return 1.0 / (2.0 * (2.0 - 2.0 * std::cos(2.0 * M_PI / n)));
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double xbar = 0, ybar = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xbar += x[i];
    ybar += y[i];
  }
  xbar /= static_cast<double>(x.size());
  ybar /= static_cast<double>(y.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - xbar) * (y[i] - ybar);
    den += (x[i] - xbar) * (x[i] - xbar);
  }
  return num / den;
}

double delta_from_gromov_products(const std::vector<std::vector<int>>& dist) {
  const int n = static_cast<int>(dist.size());
  auto gp = [&](int x, int y, int w) {
    return 0.5 * (dist[x][w] + dist[y][w] - dist[x][y]);
  };
  double delta = 0.0;
  for (int w = 0; w < n; ++w)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          const double gap = std::min(gp(x, z, w), gp(y, z, w)) - gp(x, y, w);
          delta = std::max(delta, gap);
        }
  return delta;
}

} // namespace oracles
