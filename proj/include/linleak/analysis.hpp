//===--- analysis.hpp - closed-form and Monte Carlo success rates ----------===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//
//
// How often does the attack guess right? Under a balanced membership
// prior, the success rate decomposes into the t-test's error rates:
//
//   R = 1/2 * (2 - alpha - delta)
//
// with alpha = 0.05 fixed by the two-sided test and delta the type-II
// error. Approximating the alternative's statistic by a shifted central
// t (shift T1 = (mu0 - mu1) * sqrt(m) / S) gives
//
//   delta = integral of f_t(.; m-1) over [-T* + T1, T* + T1],
//   R     = 1/2 * (1.95 - delta),      T* = t_quantile(0.975, m-1).
//
// For a Count query, x's presence shifts the mean by exactly 1, so
// mu0 - mu1 = -1. Substituting the noise's standard deviation
// sqrt(2)/eps for S yields the per-query-budget form; fixing the total
// budget eps_t = m * eps yields the total-budget form.
//
// The shifted-central-t step is an approximation (the exact law of the
// statistic under the alternative is noncentral, and the noise here is
// Laplace, not normal). empirical_success_rate measures the truth by
// simulation; the gap between the two at small m is real and documented
// in the tests rather than papered over.
//
//===----------------------------------------------------------------------===//

#ifndef LINLEAK_ANALYSIS_HPP
#define LINLEAK_ANALYSIS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "linleak/attack.hpp"
#include "linleak/core.hpp"
#include "linleak/mechanism.hpp"
#include "linleak/rng.hpp"
#include "linleak/stats.hpp"

namespace linleak {

struct PowerTerms {
  double alpha_term = 0.05;  // type-I error, fixed by the test's construction
  double delta_term = 0.0;   // type-II error under the shifted-t alternative
};

namespace detail {

inline void check_rate_args(int m, double s, const char* fn) {
  if (m < 2)
    throw std::invalid_argument(std::string(fn) + ": need m >= 2");
  if (!(s > 0.0))
    throw std::invalid_argument(std::string(fn) + ": spread S must be positive");
}

}  // namespace detail

// The two error terms of the test at level 0.05 with m samples, when the
// alternative shifts the statistic by T1 = (mu0 - mu1) * sqrt(m) / S.
inline PowerTerms power_terms(int m, double mu0, double mu1, double s) {
  detail::check_rate_args(m, s, "power_terms");
  const int nu = m - 1;
  const double t_star = t_quantile(0.975, nu);
  const double t1 = (mu0 - mu1) * std::sqrt(static_cast<double>(m)) / s;
  if (!std::isfinite(t1))
    throw std::invalid_argument("power_terms: shift T1 is not finite");
  PowerTerms terms;
  terms.delta_term = integrate([nu](double t) { return t_pdf(t, nu); },
                               -t_star + t1, t_star + t1, 1e-9);
  return terms;
}

// Success rate under a balanced membership prior: R = (2 - alpha - delta)/2.
inline double success_rate_exact(int m, double mu0, double mu1, double s) {
  const PowerTerms terms = power_terms(m, mu0, mu1, s);
  return 0.5 * (1.95 - terms.delta_term);
}

// Count-query form with the noise standard deviation sqrt(2)/eps standing
// in for S (per-query budget eps; mu0 - mu1 = -1 for Count).
inline double success_rate_per_query(int m, double eps) {
  if (m < 2)
    throw std::invalid_argument("success_rate_per_query: need m >= 2");
  if (!(eps > 0.0))
    throw std::invalid_argument(
        "success_rate_per_query: per-query budget must be positive");
  const double s = std::sqrt(2.0) / eps;
  return success_rate_exact(m, 0.0, 1.0, s);
}

// Fixed total budget eps_t spread uniformly over m queries.
inline double success_rate_total(int m, double eps_total) {
  if (m < 2)
    throw std::invalid_argument("success_rate_total: need m >= 2");
  if (!(eps_total > 0.0))
    throw std::invalid_argument(
        "success_rate_total: total budget must be positive");
  return success_rate_per_query(m, eps_total / m);
}

// Closed-form evaluation request, as exposed by the command line.
struct RateSpec {
  enum class Mode { Exact, PerQuery, Total };
  Mode mode = Mode::Total;
  int m = 0;
  double mu0 = 0.0;   // Exact
  double mu1 = 1.0;   // Exact
  double s = 0.0;     // Exact
  double eps = 0.0;       // PerQuery
  double eps_total = 0.0; // Total
  VarianceDivisor s_divisor = VarianceDivisor::M;  // empirical-side convention
};

inline double evaluate_rate(const RateSpec& spec) {
  switch (spec.mode) {
    case RateSpec::Mode::Exact:
      return success_rate_exact(spec.m, spec.mu0, spec.mu1, spec.s);
    case RateSpec::Mode::PerQuery:
      return success_rate_per_query(spec.m, spec.eps);
    case RateSpec::Mode::Total:
      return success_rate_total(spec.m, spec.eps_total);
  }
  throw std::invalid_argument("evaluate_rate: unknown mode");
}

struct EmpiricalRate {
  double rate = 0.0;
  double stderr_est = 0.0;  // sqrt(R * (1 - R) / trials)
  int trials = 0;
};

// Measures the attack's success rate by simulation: trials/2 runs with
// the target present, trials/2 with it absent (balanced prior), fresh
// mechanism and seed per trial, no abort threshold. The background
// knowledge is m singleton records, the strongest configuration m
// queries can use. Per-trial seeds derive from (seed, trial index), so
// the result is independent of batching order.
inline EmpiricalRate empirical_success_rate(
    int m, double eps_total, int trials, std::uint64_t seed,
    VarianceDivisor divisor = VarianceDivisor::M) {
  if (trials < 100)
    throw std::invalid_argument("empirical_success_rate: need trials >= 100");
  if (trials % 2 != 0)
    throw std::invalid_argument("empirical_success_rate: trials must be even");

  AttackConfig cfg;
  cfg.m = m;
  cfg.eps_total = eps_total;
  cfg.alpha = 0.05;
  cfg.target_id = "x";
  cfg.s_divisor = divisor;
  Dataset d_know_values;
  for (int i = 0; i < m; ++i) {
    const std::string id = "k" + std::to_string(i);
    cfg.known_ids.push_back(id);
    d_know_values.insert({id, 1.0});
  }
  cfg.validate();

  Dataset with_target = d_know_values;
  with_target.insert({cfg.target_id, 1.0});
  const LinearQuery q = LinearQuery::count();
  const double inf = std::numeric_limits<double>::infinity();

  int correct = 0;
  const int half = trials / 2;
  for (int trial = 0; trial < trials; ++trial) {
    const bool present = trial < half;
    Mechanism mechanism(present ? with_target : d_know_values, inf,
                        derive_seed(seed, static_cast<std::uint64_t>(trial)));
    const Verdict v = attack(mechanism, q, cfg, d_know_values);
    const bool said_in = v.decision != Decision::Out;
    if (said_in == present) ++correct;
  }

  EmpiricalRate result;
  result.trials = trials;
  result.rate = static_cast<double>(correct) / trials;
  result.stderr_est = std::sqrt(result.rate * (1.0 - result.rate) / trials);
  return result;
}

}  // namespace linleak

#endif  // LINLEAK_ANALYSIS_HPP
