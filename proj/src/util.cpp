#include "poincarekit/util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "poincarekit/errors.hpp"

namespace poincarekit {

std::uint64_t Rng::next_u64() {
  // splitmix64 (Steele, Lea, Flood)
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_below(std::uint64_t n) {
  if (n == 0) throw InputError("Rng::next_below: n must be positive");
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

double Rng::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = next_double();
  } while (u1 <= 0.0);
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Rng Rng::fork(std::uint64_t salt) const {
  Rng child(state_ ^ (0x6a09e667f3bcc909ULL + salt * 0x9e3779b97f4a7c15ULL));
  child.next_u64();
  return child;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InputError("linear_fit: need two same-length samples of size >= 2");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det <= 0.0) throw InputError("linear_fit: degenerate abscissae");
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += r * r;
  }
  fit.residual_norm = std::sqrt(rss);
  return fit;
}

namespace {
std::atomic<int> g_thread_cap{-1};

int resolve_cap() {
  int cap = g_thread_cap.load();
  if (cap == -1) {
    int from_env = 0;
    if (const char* env = std::getenv("POINCAREKIT_THREADS")) {
      from_env = std::atoi(env);
    }
    cap = from_env;
    g_thread_cap.store(cap);
  }
  if (cap <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    cap = hw == 0 ? 1 : static_cast<int>(hw);
  }
  return cap;
}
} // namespace

void set_thread_cap(int n) { g_thread_cap.store(n); }

int thread_cap() { return resolve_cap(); }

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
  const int workers = std::min<std::int64_t>(resolve_cap(), n);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::int64_t chunk = (n + workers - 1) / workers;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(error);
}

double golden_section_minimize(const std::function<double(double)>& f, double lo,
                               double hi, double tol, int max_iter) {
  if (!(lo <= hi)) throw InputError("golden_section_minimize: empty interval");
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  const double m = 0.5 * (a + b);
  return std::min({f(m), fc, fd});
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

} // namespace poincarekit
