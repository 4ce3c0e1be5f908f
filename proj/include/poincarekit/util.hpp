#ifndef POINCAREKIT_UTIL_HPP
#define POINCAREKIT_UTIL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace poincarekit {

// Deterministic 64-bit generator (splitmix64). Unlike std::normal_distribution,
// every draw is bit-identical across standard libraries, which the reproducible
// report requirement depends on.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  // uniform in [0,1)
  double next_double();
  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n);
  // standard normal via Box-Muller
  double next_normal();

  // derive an independent stream for a sub-task, stable under evaluation order
  Rng fork(std::uint64_t salt) const;

private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_norm = 0.0; // 2-norm of y - (intercept + slope x)
};

// Ordinary least squares y ~ intercept + slope * x. Requires >= 2 points.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Global worker cap for batch sweeps; 0 means "hardware concurrency".
// Reads POINCAREKIT_THREADS once at first use unless set explicitly.
void set_thread_cap(int n);
int thread_cap();

// Runs fn(i) for i in [0, n) across workers. Chunks are fixed so any
// per-chunk reduction the callers do is scheduling-independent.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

// Minimises a convex function over [lo, hi] by golden-section search.
double golden_section_minimize(const std::function<double(double)>& f, double lo,
                               double hi, double tol = 1e-12, int max_iter = 200);

std::string format_double(double v);

} // namespace poincarekit

#endif
