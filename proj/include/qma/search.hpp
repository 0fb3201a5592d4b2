#ifndef QMA_SEARCH_HPP
#define QMA_SEARCH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "qma/error.hpp"

namespace qma {

/// `count` points from lo to hi, equally spaced in log scale; endpoints exact.
inline std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    detail::domain_fail("log_grid", "need 0 < lo < hi and count >= 2");
  }
  std::vector<double> g(static_cast<std::size_t>(count));
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / (count - 1);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = std::exp(llo + step * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

struct LineMaximum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section maximization of f on [lo, hi] for a fixed number of iterations.
///
/// Returns the best point evaluated, so a maximum on the boundary is approached
/// to within 0.618^iterations of the interval width.
template <class Fn>
LineMaximum golden_section_maximize(Fn&& f, double lo, double hi, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  LineMaximum best = fc >= fd ? LineMaximum{c, fc} : LineMaximum{d, fd};
  for (int it = 0; it < iterations; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      if (fc > best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      if (fd > best.value) best = {d, fd};
    }
  }
  return best;
}

/// Evaluates f(xs[i], ys[j]) into a row-major table, rows split across threads.
/// The table is independent of the thread count.
template <class Fn>
std::vector<double> evaluate_grid(Fn&& f, const std::vector<double>& xs, const std::vector<double>& ys,
                                  int threads) {
  std::vector<double> table(xs.size() * ys.size());
  auto work = [&](std::size_t row_begin, std::size_t row_step) {
    for (std::size_t i = row_begin; i < xs.size(); i += row_step)
      for (std::size_t j = 0; j < ys.size(); ++j) table[i * ys.size() + j] = f(xs[i], ys[j]);
  };
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1) {
    work(0, 1);
    return table;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        work(w, workers);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return table;
}

}  // namespace qma

#endif  // QMA_SEARCH_HPP
