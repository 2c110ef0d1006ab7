//===--- stats.hpp - Laplace sampling, Student-t machinery, quadrature -----===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//
//
// Self-contained statistical numerics:
//
//   * inverse-CDF Laplace sampling on a deterministic stream,
//   * Student-t pdf / cdf / quantile (cdf via the regularized incomplete
//     beta function, evaluated with Lentz's continued fraction),
//   * the one-sample t-test in the convention used throughout this
//     project: S divides by m (population form) by default, with the
//     textbook m-1 variant available behind a flag,
//   * adaptive Simpson quadrature for the closed-form success-rate
//     integrals.
//
// Everything is pure given its inputs and safe to call concurrently.
//
//===----------------------------------------------------------------------===//

#ifndef LINLEAK_STATS_HPP
#define LINLEAK_STATS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "linleak/rng.hpp"

namespace linleak {

// Thrown when an iterative numeric routine fails to reach its tolerance.
struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a sample set has zero spread (S = 0), which makes the
// t statistic undefined. Callers decide policy; see the attack module.
struct DegenerateSampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//===----------------------------------------------------------------------===//
// Laplace sampling
//===----------------------------------------------------------------------===//

// Inverse CDF of Laplace(0, b) at the centered uniform u in (-1/2, 1/2):
// z = -b * sgn(u) * ln(1 - 2|u|). u = 0 maps to the median 0.
inline double inverse_laplace_cdf(double u, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("laplace: scale must be positive");
  if (!(std::fabs(u) < 0.5))
    throw std::invalid_argument("laplace: u must lie in (-1/2, 1/2)");
  double sgn = (u > 0.0) ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
  return -b * sgn * std::log1p(-2.0 * std::fabs(u));
}

// One draw from Laplace(0, b). Consumes exactly one stream value, so a
// sequence of draws can be replayed from the stream's seed.
inline double sample_laplace(RngStream& stream, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("laplace: scale must be positive");
  return inverse_laplace_cdf(stream.unit_open() - 0.5, b);
}

//===----------------------------------------------------------------------===//
// Student-t distribution
//===----------------------------------------------------------------------===//

namespace detail {

inline void check_dof(int nu, const char* fn) {
  if (nu < 1)
    throw std::invalid_argument(std::string(fn) +
                                ": degrees of freedom must be >= 1");
}

// Continued fraction for the incomplete beta function (Lentz's method).
// Converges for x < (a+1)/(a+b+2); the caller applies the symmetry
// transform for larger x.
inline double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 200;
  constexpr double kEps = 1e-14;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NonConvergenceError("incomplete beta continued fraction stalled");
}

// Regularized incomplete beta I_x(a, b) for x in [0, 1].
inline double ibeta_reg(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace detail

// Student-t density with nu degrees of freedom.
inline double t_pdf(double t, int nu) {
  detail::check_dof(nu, "t_pdf");
  const double n = nu;
  const double log_pdf = std::lgamma((n + 1.0) / 2.0) - std::lgamma(n / 2.0) -
                         0.5 * std::log(n * 3.14159265358979323846) -
                         ((n + 1.0) / 2.0) * std::log1p(t * t / n);
  return std::exp(log_pdf);
}

// Student-t CDF via I_x(nu/2, 1/2) with x = nu / (nu + t^2).
inline double t_cdf(double t, int nu) {
  detail::check_dof(nu, "t_cdf");
  if (t == 0.0) return 0.5;
  const double n = nu;
  const double x = n / (n + t * t);
  const double ib = detail::ibeta_reg(n / 2.0, 0.5, x);
  return (t > 0.0) ? 1.0 - 0.5 * ib : 0.5 * ib;
}

// Inverse of t_cdf: bracketing bisection refined by Newton steps. The
// result q satisfies |t_cdf(q, nu) - p| <= 1e-9 (in practice far better).
inline double t_quantile(double p, int nu) {
  detail::check_dof(nu, "t_quantile");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("t_quantile: p must lie in (0, 1)");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -t_quantile(1.0 - p, nu);

  // Bracket [lo, hi] with t_cdf(lo) <= p <= t_cdf(hi).
  double lo = 0.0;
  double hi = 1.0;
  while (t_cdf(hi, nu) < p) {
    hi *= 2.0;
    if (hi > 1e300) throw NonConvergenceError("t_quantile: bracket expansion failed");
  }
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    (t_cdf(mid, nu) < p ? lo : hi) = mid;
  }
  double q = 0.5 * (lo + hi);
  for (int i = 0; i < 30; ++i) {
    const double err = t_cdf(q, nu) - p;
    const double slope = t_pdf(q, nu);
    if (slope <= 0.0) break;
    const double step = err / slope;
    const double next = q - step;
    if (next <= lo || next >= hi) break;  // keep the bisection bracket
    q = next;
    if (std::fabs(step) < 1e-14 * (1.0 + std::fabs(q))) break;
  }
  if (std::fabs(t_cdf(q, nu) - p) > 1e-9)
    throw NonConvergenceError("t_quantile: tolerance not reached");
  return q;
}

//===----------------------------------------------------------------------===//
// One-sample t-test
//===----------------------------------------------------------------------===//

// Which divisor the sample spread S uses. The project convention is M
// (population form, divide by m); MMinus1 is the textbook estimator and
// exists for sensitivity analysis.
enum class VarianceDivisor { M, MMinus1 };

struct TTestResult {
  double t_stat = 0.0;
  int df = 0;
  double p_value = 1.0;  // two-sided: 2 * (1 - F_t(|t|; df))
  bool reject_null = false;
};

// Tests H0: E[samples] = mu0 against the two-sided alternative at level
// alpha. S = sqrt(sum (x - mean)^2 / m) by default; df = m - 1 always.
inline TTestResult one_sample_t_test(const std::vector<double>& samples,
                                     double mu0, double alpha,
                                     VarianceDivisor divisor = VarianceDivisor::M) {
  const std::size_t m = samples.size();
  if (m < 2)
    throw std::invalid_argument("one_sample_t_test: need at least two samples");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("one_sample_t_test: alpha must lie in (0, 1)");

  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double denom =
      (divisor == VarianceDivisor::M) ? static_cast<double>(m)
                                      : static_cast<double>(m - 1);
  const double s = std::sqrt(ss / denom);
  if (s == 0.0)
    throw DegenerateSampleError("one_sample_t_test: zero sample spread");

  TTestResult r;
  r.df = static_cast<int>(m) - 1;
  r.t_stat = (mean - mu0) / (s / std::sqrt(static_cast<double>(m)));
  r.p_value = 2.0 * (1.0 - t_cdf(std::fabs(r.t_stat), r.df));
  if (r.p_value < 0.0) r.p_value = 0.0;
  if (r.p_value > 1.0) r.p_value = 1.0;
  r.reject_null = r.p_value < alpha;
  return r;
}

//===----------------------------------------------------------------------===//
// Adaptive Simpson quadrature
//===----------------------------------------------------------------------===//

namespace detail {

template <class F>
double simpson_recurse(F& f, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0)
    throw NonConvergenceError("integrate: recursion depth exhausted");
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Integrates f over [a, b] to absolute tolerance tol (adaptive Simpson,
// recursion depth capped at 60).
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-9) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw std::invalid_argument("integrate: bounds must be finite");
  if (a > b) throw std::invalid_argument("integrate: requires a <= b");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 60);
}

}  // namespace linleak

#endif  // LINLEAK_STATS_HPP
