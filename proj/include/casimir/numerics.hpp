// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace casimir {

/// Raised when a numerical procedure cannot deliver a trustworthy number
/// (step underflow, non-finite values, diverging extrapolation).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Neumaier's variant of Kahan summation; also correct when a term exceeds
/// the running sum in magnitude.
template <typename Real = double>
class CompensatedSum {
 public:
  void add(Real x) {
    const Real t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(Real x) {
    add(x);
    return *this;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

/// Fixed-shape pairwise reduction. The tree depends only on the length of
/// the input, so the result is bit-identical no matter how the terms were
/// produced.
template <typename Real>
Real pairwise_sum(std::span<const Real> xs) {
  constexpr std::size_t leaf = 16;
  if (xs.size() <= leaf) {
    Real s = 0;
    for (Real x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <typename Real>
Real pairwise_sum(const std::vector<Real>& xs) {
  return pairwise_sum(std::span<const Real>(xs));
}

/// Worker count: explicit request, else CASIMIR_THREADS, else hardware.
inline unsigned thread_count(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CASIMIR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

/// Evaluates f(i) for i in [0, n) on up to `threads` workers. Each slot is
/// written by exactly one worker, so the output does not depend on the
/// thread count.
template <typename F>
auto parallel_map(std::size_t n, F&& f, unsigned threads) {
  using T = std::invoke_result_t<F&, std::size_t>;
  std::vector<T> out(n);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

/// One row of a Richardson table: extrapolates samples A(h_j) to h = 0 assuming
/// A(h) = A0 + c1 h^p + c2 h^{2p} + ... with h_j in a fixed ratio.
struct Extrapolation {
  double value = 0.0;
  double error = 0.0;            // |difference of the last two extrapolants|
  std::vector<double> diagonal;  // successive best extrapolants
};

/// Neville-style Richardson extrapolation in the variable h^p, eliminating
/// at most `order` error terms.
inline Extrapolation richardson(std::span<const double> h, std::span<const double> a, double p, int order) {
  if (h.size() != a.size() || h.size() < 2) throw std::invalid_argument("richardson: need >= 2 matching samples");
  const std::size_t n = h.size();
  std::vector<std::vector<double>> t(n);
  Extrapolation ex;
  for (std::size_t i = 0; i < n; ++i) {
    t[i].push_back(a[i]);
    const std::size_t depth = std::min<std::size_t>(i, static_cast<std::size_t>(order));
    for (std::size_t j = 1; j <= depth; ++j) {
      const double r = std::pow(h[i - j] / h[i], p);  // ratio of x = h^p
      t[i].push_back(t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) / (r - 1.0));
    }
    ex.diagonal.push_back(t[i].back());
  }
  ex.value = ex.diagonal.back();
  ex.error = std::abs(ex.diagonal[n - 1] - ex.diagonal[n - 2]);
  return ex;
}

struct Derivative {
  double value = 0.0;
  double error = 0.0;
};

/// Central difference with one Richardson level: combines steps h and h/2 to
/// cancel the O(h^2) term.
template <typename F>
Derivative central_difference(F&& f, double x, double h) {
  if (!(h > 0.0) || x + h == x || x - h == x)
    throw NumericalError("central_difference: step " + std::to_string(h) + " underflows at x = " + std::to_string(x));
  auto diff = [&](double step) {
    const double fp = f(x + step);
    const double fm = f(x - step);
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw NumericalError("central_difference: non-finite function value near x = " + std::to_string(x));
    return (fp - fm) / (2.0 * step);
  };
  const double d1 = diff(h);
  const double d2 = diff(0.5 * h);
  const double rich = d2 + (d2 - d1) / 3.0;
  if (!std::isfinite(rich)) throw NumericalError("central_difference: non-finite derivative");
  return {rich, std::abs(rich - d2)};
}

}  // namespace casimir
