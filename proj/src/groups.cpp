#include "poincarekit/groups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "poincarekit/errors.hpp"
#include "poincarekit/util.hpp"

namespace poincarekit {
namespace groups {

namespace {

void multiply_matrices(int dim, const std::vector<mpz_class>& a,
                       const std::vector<mpz_class>& b, std::vector<mpz_class>& out) {
  out.assign(dim * dim, mpz_class(0));
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) {
      const mpz_class& aik = a[i * dim + k];
      if (aik == 0) continue;
      for (int j = 0; j < dim; ++j) out[i * dim + j] += aik * b[k * dim + j];
    }
  }
}

std::vector<mpz_class> identity_matrix(int dim) {
  std::vector<mpz_class> m(dim * dim, mpz_class(0));
  for (int i = 0; i < dim; ++i) m[i * dim + i] = 1;
  return m;
}

mpz_class determinant(int dim, const std::vector<mpz_class>& m) {
  if (dim == 1) return m[0];
  if (dim == 2) return m[0] * m[3] - m[1] * m[2];
  mpz_class det(0);
  std::vector<mpz_class> minor((dim - 1) * (dim - 1));
  for (int col = 0; col < dim; ++col) {
    if (m[col] == 0) continue;
    int mi = 0;
    for (int r = 1; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        if (c != col) minor[mi++] = m[r * dim + c];
    const mpz_class sub = determinant(dim - 1, minor);
    if (col % 2 == 0)
      det += m[col] * sub;
    else
      det -= m[col] * sub;
  }
  return det;
}

// adjugate / det; exact for GL_n(Z) elements (det = +-1)
std::vector<mpz_class> invert_matrix(int dim, const std::vector<mpz_class>& m) {
  const mpz_class det = determinant(dim, m);
  if (det != 1 && det != -1)
    throw InputError("matrix element is not invertible over the integers (det = " +
                     det.get_str() + ")");
  std::vector<mpz_class> inv(dim * dim);
  std::vector<mpz_class> minor((dim - 1) * (dim - 1));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (dim == 1) {
        inv[0] = m[0]; // det = +-1, inverse equals itself over Z
        continue;
      }
      int mi = 0;
      for (int r = 0; r < dim; ++r) {
        if (r == i) continue;
        for (int c = 0; c < dim; ++c) {
          if (c == j) continue;
          minor[mi++] = m[r * dim + c];
        }
      }
      mpz_class cof = determinant(dim - 1, minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv[j * dim + i] = (det == 1) ? cof : mpz_class(-cof);
    }
  }
  return inv;
}

} // namespace

GroupModel GroupModel::free_group(int rank) {
  if (rank < 0) throw InputError("free_group: negative rank");
  GroupModel g;
  g.kind_ = Kind::Free;
  g.rank_ = rank;
  for (int i = 1; i <= rank; ++i) {
    GroupElement e;
    e.word = {static_cast<std::int32_t>(i)};
    g.generators_.push_back(e);
    e.word = {static_cast<std::int32_t>(-i)};
    g.generators_.push_back(e);
  }
  return g;
}

GroupModel GroupModel::free_abelian(int rank) {
  if (rank < 0) throw InputError("free_abelian: negative rank");
  GroupModel g;
  g.kind_ = Kind::FreeAbelian;
  g.rank_ = rank;
  for (int i = 0; i < rank; ++i) {
    GroupElement e;
    e.vec.assign(rank, 0);
    e.vec[i] = 1;
    g.generators_.push_back(e);
    e.vec[i] = -1;
    g.generators_.push_back(e);
  }
  return g;
}

GroupModel GroupModel::matrix_group(int dim,
                                    std::vector<std::vector<mpz_class>> generators) {
  if (dim <= 0) throw InputError("matrix_group: dimension must be positive");
  GroupModel g;
  g.kind_ = Kind::Matrix;
  g.dim_ = dim;
  const auto id = identity_matrix(dim);
  for (const auto& m : generators) {
    if (static_cast<int>(m.size()) != dim * dim)
      throw InputError("matrix_group: generator has wrong shape");
    if (m == id) throw InputError("matrix_group: identity listed as a generator");
  }
  // closure under inversion: each generator's inverse must be listed
  for (const auto& m : generators) {
    bool found = false;
    std::vector<mpz_class> prod;
    for (const auto& h : generators) {
      multiply_matrices(dim, m, h, prod);
      if (prod == id) {
        found = true;
        break;
      }
    }
    if (!found)
      throw InputError("matrix_group: generator set is not closed under inversion");
  }
  g.matrix_generators_ = std::move(generators);
  for (const auto& m : g.matrix_generators_) {
    GroupElement e;
    e.mat = m;
    g.generators_.push_back(std::move(e));
  }
  return g;
}

GroupModel GroupModel::direct_product(std::vector<GroupModel> factors) {
  if (factors.empty()) throw InputError("direct_product: no factors");
  GroupModel g;
  g.kind_ = Kind::Product;
  g.factors_ = std::move(factors);
  for (std::size_t i = 0; i < g.factors_.size(); ++i) {
    for (const auto& gen : g.factors_[i].generators()) {
      GroupElement e;
      for (std::size_t j = 0; j < g.factors_.size(); ++j)
        e.factors.push_back(j == i ? gen : g.factors_[j].identity());
      g.generators_.push_back(std::move(e));
    }
  }
  return g;
}

GroupElement GroupModel::identity() const {
  GroupElement e;
  switch (kind_) {
    case Kind::Free: break;
    case Kind::FreeAbelian: e.vec.assign(rank_, 0); break;
    case Kind::Matrix: e.mat = identity_matrix(dim_); break;
    case Kind::Product:
      for (const auto& f : factors_) e.factors.push_back(f.identity());
      break;
  }
  return e;
}

GroupElement GroupModel::multiply(const GroupElement& a, const GroupElement& b) const {
  GroupElement r;
  switch (kind_) {
    case Kind::Free: {
      r.word = a.word;
      for (std::int32_t s : b.word) {
        if (!r.word.empty() && r.word.back() == -s)
          r.word.pop_back(); // free reduction at the seam
        else
          r.word.push_back(s);
      }
      break;
    }
    case Kind::FreeAbelian: {
      r.vec.resize(rank_);
      for (int i = 0; i < rank_; ++i) r.vec[i] = a.vec[i] + b.vec[i];
      break;
    }
    case Kind::Matrix:
      multiply_matrices(dim_, a.mat, b.mat, r.mat);
      break;
    case Kind::Product:
      r.factors.reserve(factors_.size());
      for (std::size_t i = 0; i < factors_.size(); ++i)
        r.factors.push_back(factors_[i].multiply(a.factors[i], b.factors[i]));
      break;
  }
  return r;
}

GroupElement GroupModel::inverse(const GroupElement& a) const {
  GroupElement r;
  switch (kind_) {
    case Kind::Free:
      r.word.reserve(a.word.size());
      for (auto it = a.word.rbegin(); it != a.word.rend(); ++it) r.word.push_back(-*it);
      break;
    case Kind::FreeAbelian:
      r.vec.resize(rank_);
      for (int i = 0; i < rank_; ++i) r.vec[i] = -a.vec[i];
      break;
    case Kind::Matrix:
      r.mat = invert_matrix(dim_, a.mat);
      break;
    case Kind::Product:
      r.factors.reserve(factors_.size());
      for (std::size_t i = 0; i < factors_.size(); ++i)
        r.factors.push_back(factors_[i].inverse(a.factors[i]));
      break;
  }
  return r;
}

bool GroupModel::is_identity(const GroupElement& a) const {
  switch (kind_) {
    case Kind::Free: return a.word.empty();
    case Kind::FreeAbelian:
      return std::all_of(a.vec.begin(), a.vec.end(), [](std::int64_t v) { return v == 0; });
    case Kind::Matrix: return a.mat == identity_matrix(dim_);
    case Kind::Product:
      for (std::size_t i = 0; i < factors_.size(); ++i)
        if (!factors_[i].is_identity(a.factors[i])) return false;
      return true;
  }
  return false;
}

std::string GroupModel::canonical_key(const GroupElement& a) const {
  std::string key;
  switch (kind_) {
    case Kind::Free:
      key = "f:";
      for (std::int32_t s : a.word) {
        key += std::to_string(s);
        key += ',';
      }
      break;
    case Kind::FreeAbelian:
      key = "a:";
      for (std::int64_t v : a.vec) {
        key += std::to_string(v);
        key += ',';
      }
      break;
    case Kind::Matrix:
      key = "m:";
      for (const auto& v : a.mat) {
        key += v.get_str();
        key += ',';
      }
      break;
    case Kind::Product:
      key = "p:";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        key += '(';
        key += factors_[i].canonical_key(a.factors[i]);
        key += ')';
      }
      break;
  }
  return key;
}

namespace {

struct BallEnumeration {
  std::vector<GroupElement> elements; // sorted canonical form per level
  std::vector<std::string> keys;
  std::vector<int> word_length;
  std::vector<std::int64_t> level_sizes;
  std::unordered_map<std::string, int> index_of;
};

BallEnumeration enumerate_ball(const GroupModel& group, int radius,
                               std::int64_t max_vertices) {
  if (radius < 0) throw InputError("cayley ball radius must be nonnegative");
  BallEnumeration out;
  const GroupElement id = group.identity();
  out.elements.push_back(id);
  out.keys.push_back(group.canonical_key(id));
  out.word_length.push_back(0);
  out.level_sizes.push_back(1);
  out.index_of.emplace(out.keys[0], 0);

  std::size_t level_begin = 0;
  for (int level = 1; level <= radius; ++level) {
    std::map<std::string, GroupElement> next; // sorted canonical order
    for (std::size_t i = level_begin; i < out.elements.size(); ++i) {
      for (const auto& gen : group.generators()) {
        GroupElement cand = group.multiply(out.elements[i], gen);
        std::string key = group.canonical_key(cand);
        if (out.index_of.count(key) || next.count(key)) continue;
        next.emplace(std::move(key), std::move(cand));
      }
    }
    level_begin = out.elements.size();
    if (static_cast<std::int64_t>(out.elements.size() + next.size()) > max_vertices)
      throw ResourceError("cayley ball vertex budget exceeded: need " +
                          std::to_string(out.elements.size() + next.size()) +
                          ", budget " + std::to_string(max_vertices));
    for (auto& [key, elem] : next) {
      out.index_of.emplace(key, static_cast<int>(out.elements.size()));
      out.keys.push_back(key);
      out.elements.push_back(std::move(elem));
      out.word_length.push_back(level);
    }
    out.level_sizes.push_back(static_cast<std::int64_t>(out.elements.size() - level_begin));
  }
  return out;
}

} // namespace

CayleyBall cayley_ball(const GroupModel& group, int radius, const MeasureRule& rule,
                       std::int64_t max_vertices) {
  BallEnumeration e = enumerate_ball(group, radius, max_vertices);
  const int n = static_cast<int>(e.elements.size());

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (const auto& gen : group.generators()) {
      const GroupElement nbr = group.multiply(e.elements[i], gen);
      auto it = e.index_of.find(group.canonical_key(nbr));
      if (it != e.index_of.end() && it->second > i) edges.emplace_back(i, it->second);
    }
  }

  Eigen::VectorXd measure(n);
  if (rule.is_counting()) {
    measure.setOnes();
  } else {
    for (int i = 0; i < n; ++i) {
      const double m = rule.fn(e.elements[i]);
      if (!(m >= rule.lower && m <= rule.upper) || !(m > 0.0))
        throw InputError("measure rule violates its stated bounds at vertex " +
                         std::to_string(i));
      measure[i] = m;
    }
  }

  CayleyBall ball{MeasuredGraph::from_edges(n, edges, std::move(measure), std::move(e.keys)),
                  radius, 0, std::move(e.elements), std::move(e.word_length),
                  std::move(e.level_sizes)};
  return ball;
}

GrowthProfile growth_series(const GroupModel& group, int R_max, const MeasureRule& rule,
                            std::int64_t max_vertices) {
  if (R_max < 0) throw InputError("growth_series: R_max must be nonnegative");
  BallEnumeration e = enumerate_ball(group, R_max, max_vertices);
  std::vector<double> radii(R_max + 1), values(R_max + 1);
  std::vector<double> level_mass(R_max + 1, 0.0);
  for (std::size_t i = 0; i < e.elements.size(); ++i) {
    const double m = rule.is_counting() ? 1.0 : rule.fn(e.elements[i]);
    level_mass[e.word_length[i]] += m;
  }
  double cum = 0.0;
  for (int R = 0; R <= R_max; ++R) {
    cum += level_mass[R];
    radii[R] = R;
    values[R] = cum;
  }
  return GrowthProfile(std::move(radii), std::move(values), GrowthMode::Absolute);
}

EntropyEstimate entropy_estimate(const GrowthProfile& profile, double window_lo,
                                 double window_hi) {
  if (window_lo > window_hi) throw InputError("entropy_estimate: empty window");
  if (window_hi > profile.max_radius() + 1e-12)
    throw InputError("entropy_estimate: window extends beyond the tabulated radii");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double r = profile.radii()[i];
    if (r + 1e-12 < window_lo || r - 1e-12 > window_hi) continue;
    const double v = profile.values()[i];
    if (!(v > 0.0)) throw InputError("entropy_estimate: profile values must be positive");
    xs.push_back(r);
    ys.push_back(std::log(v));
  }
  if (xs.size() < 3)
    throw InputError("entropy_estimate: window must contain at least 3 tabulated radii");
  const LinearFit fit = linear_fit(xs, ys);
  return EntropyEstimate{fit.slope, fit.residual_norm, static_cast<int>(xs.size())};
}

double hyperbolicity_delta(const MeasuredGraph& graph, const DeltaOptions& options) {
  const int n = graph.vertex_count();
  if (options.exhaustive) {
    const std::int64_t quadruple_count =
        n < 4 ? 0
              : static_cast<std::int64_t>(n) * (n - 1) / 2 * (n - 2) / 3 * (n - 3) / 4;
    if (quadruple_count > options.max_quadruples)
      throw ResourceError("quadruple budget exceeded: need " +
                          std::to_string(quadruple_count) + ", budget " +
                          std::to_string(options.max_quadruples));
    if (n < 4) return 0.0;

    std::vector<std::vector<int>> dist(n);
    for (int v = 0; v < n; ++v) dist[v] = bfs_distances(graph, v);

    int best_gap = 0; // 2 * delta
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const int dij = dist[i][j];
        for (int k = j + 1; k < n; ++k) {
          const int dik = dist[i][k];
          const int djk = dist[j][k];
          for (int l = k + 1; l < n; ++l) {
            const int s1 = dij + dist[k][l];
            const int s2 = dik + dist[j][l];
            const int s3 = dist[i][l] + djk;
            const int hi = std::max({s1, s2, s3});
            const int lo = std::min({s1, s2, s3});
            const int mid = s1 + s2 + s3 - hi - lo;
            best_gap = std::max(best_gap, hi - mid);
          }
        }
      }
    }
    return best_gap / 2.0;
  }

  if (options.sample_count <= 0)
    throw InputError("hyperbolicity_delta: sample mode needs a positive sample count");
  if (options.sample_count > options.max_quadruples)
    throw ResourceError("quadruple budget exceeded: need " +
                        std::to_string(options.sample_count) + ", budget " +
                        std::to_string(options.max_quadruples));
  if (n < 4) return 0.0;

  Rng rng(options.seed);
  std::unordered_map<int, std::vector<int>> dist_cache;
  auto dist_row = [&](int v) -> const std::vector<int>& {
    auto it = dist_cache.find(v);
    if (it == dist_cache.end()) it = dist_cache.emplace(v, bfs_distances(graph, v)).first;
    return it->second;
  };

  int best_gap = 0;
  for (std::int64_t s = 0; s < options.sample_count; ++s) {
    int q[4];
    for (int t = 0; t < 4; ++t) {
      bool fresh;
      do {
        q[t] = static_cast<int>(rng.next_below(n));
        fresh = true;
        for (int u = 0; u < t; ++u) fresh = fresh && q[u] != q[t];
      } while (!fresh);
    }
    const auto& di = dist_row(q[0]);
    const auto& dj = dist_row(q[1]);
    const auto& dk = dist_row(q[2]);
    const int s1 = di[q[1]] + dk[q[3]];
    const int s2 = di[q[2]] + dj[q[3]];
    const int s3 = di[q[3]] + dj[q[2]];
    const int hi = std::max({s1, s2, s3});
    const int lo = std::min({s1, s2, s3});
    const int mid = s1 + s2 + s3 - hi - lo;
    best_gap = std::max(best_gap, hi - mid);
  }
  return best_gap / 2.0;
}

SystoleEstimate systole_estimate(const GroupModel& group, int sample_radius,
                                 int gamma_radius, std::int64_t max_vertices) {
  if (sample_radius < 0 || gamma_radius < 1)
    throw InputError("systole_estimate: need sample_radius >= 0 and gamma_radius >= 1");
  if (group.generators().empty())
    throw InputError("systole_estimate: the group has no nontrivial elements");

  const int reach = 2 * sample_radius + gamma_radius;
  BallEnumeration e = enumerate_ball(group, reach, max_vertices);

  std::vector<int> xs, gammas;
  for (std::size_t i = 0; i < e.elements.size(); ++i) {
    if (e.word_length[i] <= sample_radius) xs.push_back(static_cast<int>(i));
    if (e.word_length[i] >= 1 && e.word_length[i] <= gamma_radius)
      gammas.push_back(static_cast<int>(i));
  }
  if (gammas.empty())
    throw InputError("systole_estimate: no nontrivial gamma within the budget");

  SystoleEstimate out;
  out.sample_radius = sample_radius;
  out.gamma_radius = gamma_radius;
  out.global = reach + 1;
  for (int xi : xs) {
    const GroupElement x_inv = group.inverse(e.elements[xi]);
    int best = reach + 1;
    for (int gi : gammas) {
      const GroupElement conj =
          group.multiply(group.multiply(x_inv, e.elements[gi]), e.elements[xi]);
      const auto it = e.index_of.find(group.canonical_key(conj));
      if (it == e.index_of.end())
        throw InvariantViolation("systole_estimate: conjugate escaped the enumerated ball");
      best = std::min(best, e.word_length[it->second]);
    }
    out.sample_keys.push_back(e.keys[xi]);
    out.pointwise.push_back(best);
    out.global = std::min(out.global, best);
  }
  return out;
}

} // namespace groups
} // namespace poincarekit
