// Copyright 2026 The casimir-pistons Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <casimir/model.hpp>
#include <casimir/numerics.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

/// Brute-force ground truth for rectangular cavities: the eigenmode lattice
///   omega(n) = pi * sqrt(sum_i (n_i / l_i)^2)
/// (Dirichlet n_i >= 1; Neumann n_i >= 0 without the all-zero mode; EM two
/// polarizations when no index vanishes, one when exactly one does) summed
/// with a damping cutoff and extrapolated to zero cutoff inside the
/// subtracted piston combination E(d) + E(H - d) - 2 E(H/2).
///
/// Nothing here uses the periodic-orbit (image) representation.
namespace casimir::oracle {

enum class Regulator {
  Exponential,  // exp(-lambda * omega)
  Gaussian,     // exp(-(lambda * omega)^2)
};

/// Mode lattice of a box with 1 to 3 edges.
struct ModeSpectrum {
  std::vector<double> lengths;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;

  void validate() const {
    if (lengths.empty() || lengths.size() > 3) throw std::domain_error("ModeSpectrum: 1 to 3 lengths required");
    for (double l : lengths)
      if (!(l > 0.0) || !std::isfinite(l)) throw std::domain_error("ModeSpectrum: lengths must be positive and finite");
    if (bc == BoundaryCondition::EM && lengths.size() != 3)
      throw std::domain_error("ModeSpectrum: the electromagnetic spectrum needs a three-dimensional box");
  }

  /// Degeneracy of the mode with `zeros` vanishing indices (out of `dims`).
  int weight(int zeros) const {
    const int dims = static_cast<int>(lengths.size());
    switch (bc) {
      case BoundaryCondition::Dirichlet: return zeros == 0 ? 1 : 0;
      case BoundaryCondition::Neumann: return zeros == dims ? 0 : 1;
      case BoundaryCondition::EM: return zeros == 0 ? 2 : (zeros == 1 ? 1 : 0);
    }
    return 0;
  }
};

inline double damping(double lambda, double omega, Regulator reg) {
  const double x = lambda * omega;
  return reg == Regulator::Exponential ? std::exp(-x) : std::exp(-x * x);
}

/// (1/2) sum_n omega_n g(lambda omega_n) by direct enumeration of the modes.
/// Modes are enumerated until the damping factor falls below 1e-16. Divergent
/// as lambda -> 0; only differences of it are physical.
inline double regularized_energy(std::span<const double> lengths, BoundaryCondition bc, double lambda,
                                 Regulator reg = Regulator::Exponential, unsigned threads = 0) {
  if (!(lambda > 0.0)) throw std::domain_error("regularized_energy: lambda must be positive");
  ModeSpectrum spec{{lengths.begin(), lengths.end()}, bc};
  spec.validate();
  const double cut = -std::log(1e-16);  // ~36.8
  const double omega_max = reg == Regulator::Exponential ? cut / lambda : std::sqrt(cut) / lambda;
  const int dims = static_cast<int>(lengths.size());
  std::int64_t nmax[3] = {0, 0, 0};
  double k[3] = {0, 0, 0};  // pi / l_i
  for (int i = 0; i < dims; ++i) {
    k[i] = std::numbers::pi / lengths[i];
    nmax[i] = static_cast<std::int64_t>(std::floor(omega_max / k[i]));
  }
  const double om2 = omega_max * omega_max;

  auto slice = [&](std::size_t idx) {
    const auto n0 = static_cast<std::int64_t>(idx);
    const double a0 = static_cast<double>(n0) * k[0];
    CompensatedSum<> s;
    for (std::int64_t n1 = 0; n1 <= nmax[1]; ++n1) {
      const double a1 = static_cast<double>(n1) * k[1];
      if (a0 * a0 + a1 * a1 > om2) break;
      for (std::int64_t n2 = 0; n2 <= nmax[2]; ++n2) {
        const double a2 = static_cast<double>(n2) * k[2];
        const double w2 = a0 * a0 + a1 * a1 + a2 * a2;
        if (w2 > om2) break;
        int zeros = (n0 == 0) + (dims > 1 && n1 == 0) + (dims > 2 && n2 == 0);
        const int w = spec.weight(zeros);
        if (w == 0) continue;
        const double omega = std::sqrt(w2);
        s += 0.5 * w * omega * damping(lambda, omega, reg);
      }
    }
    return s.value();
  };
  const auto parts = parallel_map(static_cast<std::size_t>(nmax[0]) + 1, slice, thread_count(threads));
  return pairwise_sum(parts);
}

// ---------------------------------------------------------------------------
// Subtracted piston energy at finite cutoff, via heat-trace factorization.
//
// The damped sums are rewritten through the heat trace Theta(t) = sum_n
// exp(-t omega_n^2), which factorizes over the box edges into one-dimensional
// sums theta(t; l) = sum_{n>=1} exp(-t pi^2 n^2 / l^2). Only the piston axis
// depends on d, so the subtracted trace is
//   B(t) = T(t) [theta(t; d) + theta(t; H-d) - 2 theta(t; H/2)],
// with T the product of the transverse factors. Then, exactly,
//   exponential: E(lambda) = -(1/(4 sqrt pi)) int t^{-3/2} exp(-lambda^2/4t) (1 - lambda^2/2t) B(t) dt
//   gaussian:    E(lambda) = -(1/sqrt pi) int_0^inf B'(lambda^2 + u^2) du
// and the cancellation of the divergent pieces happens inside B(t) rather
// than between huge mode sums.

namespace detail {

struct Theta {
  double value = 0.0;  // sum_{n>=1} exp(-t pi^2 n^2 / l^2)
  double deriv = 0.0;  // d/dt
};

inline Theta theta_dirichlet(double t, double l) {
  const double c = std::numbers::pi * std::numbers::pi / (l * l);
  Theta th;
  for (std::int64_t n = 1;; ++n) {
    const double e = c * static_cast<double>(n * n);
    const double term = std::exp(-t * e);
    th.value += term;
    th.deriv -= e * term;
    if (t * e > 40.0 && term <= 1e-18 * th.value) break;
    if (term == 0.0) break;
  }
  return th;
}

/// Poisson-dual form of theta(t; l) - (l / (2 sqrt(pi t)) - 1/2), i.e.
/// (l / sqrt(pi t)) sum_{m>=1} exp(-m^2 l^2 / t). Accurate for t below l^2,
/// where the direct sum would cancel against the smooth part.
inline Theta theta_dual_remainder(double t, double l) {
  const double pre = l / std::sqrt(std::numbers::pi * t);
  Theta th;
  for (std::int64_t m = 1;; ++m) {
    const double a = static_cast<double>(m * m) * l * l / t;
    const double term = std::exp(-a);
    th.value += pre * term;
    th.deriv += pre * term * (a - 0.5) / t;
    if (a > 40.0 || term == 0.0) break;
  }
  return th;
}

struct PistonTrace {
  double d, H;
  std::vector<double> transverse;
  BoundaryCondition bc;

  /// B(t) and B'(t).
  std::pair<double, double> operator()(double t) const {
    // The smooth parts l / (2 sqrt(pi t)) - 1/2 cancel exactly between
    // d, H - d and H/2, so below the crossover only the dual remainders are
    // summed; above it the direct sums are small and well conditioned.
    const bool dual = t < d * (H - d);
    auto theta = dual ? theta_dual_remainder : theta_dirichlet;
    const Theta a = theta(t, d);
    const Theta b = theta(t, H - d);
    const Theta c = theta(t, 0.5 * H);
    const double axis = (a.value + b.value) - 2.0 * c.value;
    const double axis_d = (a.deriv + b.deriv) - 2.0 * c.deriv;

    // Transverse factor: products of Dirichlet (n >= 1) or Neumann (n >= 0)
    // one-dimensional traces. Neumann constants cancel along the axis.
    double td = 1.0, td_d = 0.0, tn = 1.0, tn_d = 0.0;
    for (double l : transverse) {
      const Theta th = theta_dirichlet(t, l);
      td_d = td_d * th.value + td * th.deriv;
      td *= th.value;
      tn_d = tn_d * (1.0 + th.value) + tn * th.deriv;
      tn *= 1.0 + th.value;
    }
    double T = 0.0, T_d = 0.0;
    switch (bc) {
      case BoundaryCondition::Dirichlet: T = td, T_d = td_d; break;
      case BoundaryCondition::Neumann: T = tn, T_d = tn_d; break;
      // D + N minus the modes with exactly two vanishing indices; of those only
      // the ones along the axis survive the subtraction.
      case BoundaryCondition::EM: T = td + tn - 1.0, T_d = td_d + tn_d; break;
    }
    return {T * axis, T_d * axis + T * axis_d};
  }
};

/// Trapezoid rule in a logarithmic variable, halving the step until two
/// successive estimates agree to `rel_tol`. The integrands decay double
/// exponentially in that variable, so the rule converges geometrically.
template <typename F>
std::pair<double, double> log_trapezoid(F&& f, double lo, double hi, double rel_tol, unsigned threads) {
  int n = 64;
  double h = (hi - lo) / n;
  auto nodes = parallel_map(static_cast<std::size_t>(n) + 1, [&](std::size_t i) { return f(lo + h * static_cast<double>(i)); }, threads);
  auto sum_nodes = [](std::vector<double> v) {
    v.front() *= 0.5;
    v.back() *= 0.5;
    return pairwise_sum(v);
  };
  double total = sum_nodes(nodes);
  double estimate = total * h;
  for (int level = 0; level < 12; ++level) {
    const double hn = 0.5 * h;
    auto mids = parallel_map(static_cast<std::size_t>(n), [&](std::size_t i) { return f(lo + hn * (2.0 * static_cast<double>(i) + 1.0)); }, threads);
    total += pairwise_sum(mids);
    n *= 2;
    h = hn;
    const double next = total * h;
    const double change = std::abs(next - estimate);
    estimate = next;
    if (change <= rel_tol * std::abs(estimate) || change < 1e-300) return {estimate, change};
  }
  throw NumericalError("oracle quadrature failed to converge");
}

}  // namespace detail

struct DampedEnergy {
  double value = 0.0;
  double quadrature_error = 0.0;
};

/// E_lambda(d) + E_lambda(H-d) - 2 E_lambda(H/2) for the damped mode sum of a
/// box piston with the given transverse edges (0, 1 or 2 of them).
inline DampedEnergy subtracted_damped_energy(double d, double H, std::span<const double> transverse, BoundaryCondition bc,
                                             double lambda, Regulator reg = Regulator::Exponential, unsigned threads = 0) {
  if (!(lambda >= 0.0)) throw std::domain_error("subtracted_damped_energy: lambda must be nonnegative");
  if (!(d > 0.0) || !(d < H) || !std::isfinite(H)) throw std::domain_error("subtracted_damped_energy: need 0 < d < H < inf");
  std::vector<double> lengths{d};
  lengths.insert(lengths.end(), transverse.begin(), transverse.end());
  ModeSpectrum{lengths, bc}.validate();
  if (d == 0.5 * H) return {0.0, 0.0};

  const detail::PistonTrace trace{d, H, {transverse.begin(), transverse.end()}, bc};
  const double near = std::min(d, H - d);
  const double far = std::max(d, H - d);
  // B(t) ~ exp(-near^2 / t) as t -> 0 and ~ exp(-pi^2 t / far^2) as t -> inf.
  const double t_lo = near * near / 46.0;
  const double t_hi = 46.0 * far * far / (std::numbers::pi * std::numbers::pi);
  const unsigned workers = thread_count(threads);
  const double rel_tol = 1e-13;

  if (reg == Regulator::Exponential) {
    const double l2 = lambda * lambda;
    auto integrand = [&](double x) {
      const double t = std::exp(x);
      const double B = trace(t).first;
      return std::exp(-l2 / (4.0 * t)) * (1.0 - l2 / (2.0 * t)) * B / std::sqrt(t);
    };
    const auto [val, err] = detail::log_trapezoid(integrand, std::log(t_lo), std::log(t_hi), rel_tol, workers);
    const double pre = -1.0 / (4.0 * std::sqrt(std::numbers::pi));
    return {pre * val, std::abs(pre) * err};
  }
  const double l2 = lambda * lambda;
  auto integrand = [&](double y) {
    const double u = std::exp(y);
    return u * trace(l2 + u * u).second;
  };
  // Below u ~ lambda the integrand only decays like u, so the range extends
  // 37 e-folds under lambda when lambda^2 exceeds t_lo.
  double y_lo = 0.5 * std::log(t_lo) - 3.0;
  if (lambda > 0.0) y_lo = std::min(y_lo, std::log(lambda) - 37.0);
  const auto [val, err] = detail::log_trapezoid(integrand, y_lo, 0.5 * std::log(t_hi), rel_tol, workers);
  const double pre = -1.0 / std::sqrt(std::numbers::pi);
  return {pre * val, std::abs(pre) * err};
}

struct OracleControl {
  double lambda0_factor = 0.2;  // lambda_0 = factor * shortest edge
  int levels = 6;               // lambda_j = lambda_0 / 2^j
  int order = 2;                // Richardson error terms eliminated (in lambda^2)
  Regulator regulator = Regulator::Exponential;
  unsigned threads = 0;
};

struct OracleResult {
  double value = 0.0;
  double error_bar = 0.0;
  std::vector<double> lambdas;
  std::vector<double> samples;      // damped subtracted energies
  std::vector<double> extrapolants; // Richardson diagonal
};

/// Cutoff-extrapolated subtracted energy of a box piston.
inline OracleResult oracle_piston_energy(double d, double H, std::span<const double> transverse, BoundaryCondition bc,
                                         const OracleControl& ctl = {}) {
  if (ctl.levels < 2) throw std::domain_error("oracle_piston_energy: need at least two cutoff levels");
  if (!(ctl.lambda0_factor > 0.0)) throw std::domain_error("oracle_piston_energy: lambda0_factor must be positive");
  if (!(d > 0.0) || !(d < H)) throw std::domain_error("oracle_piston_energy: need 0 < d < H");
  double shortest = std::min(d, H - d);
  for (double l : transverse) shortest = std::min(shortest, l);

  OracleResult r;
  double quad_err = 0.0;
  for (int j = 0; j < ctl.levels; ++j) {
    const double lambda = ctl.lambda0_factor * shortest * std::pow(0.5, j);
    const DampedEnergy e = subtracted_damped_energy(d, H, transverse, bc, lambda, ctl.regulator, ctl.threads);
    r.lambdas.push_back(lambda);
    r.samples.push_back(e.value);
    quad_err = std::max(quad_err, e.quadrature_error);
  }
  const Extrapolation ex = richardson(r.lambdas, r.samples, 2.0, ctl.order);
  r.extrapolants = ex.diagonal;
  r.value = ex.value;
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::abs(*std::max_element(r.samples.begin(), r.samples.end(),
                                                  [](double a, double b) { return std::abs(a) < std::abs(b); }));
  r.error_bar = ex.error + quad_err + noise;

  const std::size_t n = ex.diagonal.size();
  if (n >= 3) {
    const double last = std::abs(ex.diagonal[n - 1] - ex.diagonal[n - 2]);
    const double prev = std::abs(ex.diagonal[n - 2] - ex.diagonal[n - 3]);
    if (last > prev && last > 1e3 * (noise + quad_err))
      throw NumericalError("oracle_piston_energy: cutoff extrapolation is not converging (last step " +
                           std::to_string(last) + " > previous " + std::to_string(prev) + ")");
  }
  return r;
}

}  // namespace casimir::oracle
