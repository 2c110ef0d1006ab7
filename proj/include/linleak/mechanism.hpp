//===--- mechanism.hpp - the Laplace black box and budget accounting -------===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//
//
// The defender. A Mechanism owns a dataset and answers conditioned linear
// queries with Laplace noise, under three behavioral rules:
//
//   1. Identical queries (same kind, same condition, same epsilon) return
//      the identical answer: answers are memoized, and a cache hit costs
//      no budget.
//   2. Fresh queries are always answered while the budget holds.
//   3. The budget is tracked per record: each answered query adds its
//      epsilon to every record in the query's effective set, and the
//      mechanism's consumed total is the maximum over records. Once that
//      total exceeds the abort threshold, the triggering answer is
//      withheld and the mechanism aborts permanently.
//
// Per-record bookkeeping makes the standard composition results emergent:
// queries over pairwise-disjoint record sets compose in parallel (total =
// max epsilon), overlapping queries compose sequentially (total = sum) --
// and the gap between the mechanism's total and the querier's naive
// sequential total is exactly the leakage this project studies.
//
// Budget sums use compensated (Neumaier) summation so that repeated
// decimal charges stay exact: ten charges of 0.1 total exactly 1.0.
//
//===----------------------------------------------------------------------===//

#ifndef LINLEAK_MECHANISM_HPP
#define LINLEAK_MECHANISM_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linleak/core.hpp"
#include "linleak/rng.hpp"
#include "linleak/stats.hpp"

namespace linleak {

// Compensated running sum (Neumaier's variant of Kahan summation).
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double total() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Identity of an issued query: kind + canonical (sorted) condition ids +
// epsilon. Two issues with the same key are "the same query" and share a
// memoized answer; a re-issue at a different epsilon is a new query.
struct QueryKey {
  QueryKind kind;
  std::vector<std::string> ids;  // sorted
  double eps;

  friend auto operator<=>(const QueryKey&, const QueryKey&) = default;

  static QueryKey make(const LinearQuery& q, const Condition& s, double eps) {
    std::vector<std::string> ids(s.member_ids.begin(), s.member_ids.end());
    return {q.kind, std::move(ids), eps};
  }
};

// Per-record cumulative spend. total() is the max over records -- the
// mechanism's own view of how much budget has been consumed.
class BudgetAccountant {
 public:
  void charge(const std::vector<Record>& effective, double eps) {
    for (const Record& r : effective) spend_[r.id].add(eps);
  }

  double spend(const std::string& id) const {
    auto it = spend_.find(id);
    return it == spend_.end() ? 0.0 : it->second.total();
  }

  double total() const {
    double best = 0.0;
    for (const auto& [id, sum] : spend_) best = std::max(best, sum.total());
    return best;
  }

 private:
  std::map<std::string, NeumaierSum> spend_;
};

// A successful answer: the noisy value and the budget charged for it
// (0 when served from the memo cache).
struct Answer {
  double value = 0.0;
  double eps_charged = 0.0;
};

// Empty optional means the mechanism aborted (either on this issue or
// previously); the triggering answer is withheld.
using IssueOutcome = std::optional<Answer>;

class Mechanism {
 public:
  // eps_limit may be infinity (never aborts). Rejects eps_limit <= 0.
  Mechanism(Dataset dataset, double eps_limit, std::uint64_t seed)
      : dataset_(std::move(dataset)), eps_limit_(eps_limit), rng_(seed) {
    if (std::isnan(eps_limit) || !(eps_limit > 0.0))
      throw std::invalid_argument("Mechanism: abort threshold must be positive");
  }

  // Answers q over the effective set of s, spending eps. Single-writer:
  // calls on one instance must be externally serialized.
  IssueOutcome issue(const LinearQuery& q, const Condition& s, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps))
      throw std::invalid_argument("Mechanism::issue: epsilon must be positive");
    if (aborted_) return std::nullopt;

    QueryKey key = QueryKey::make(q, s, eps);
    if (auto it = memo_.find(key); it != memo_.end()) {
      trace_.push_back(0.0);
      return Answer{it->second, 0.0};
    }

    const std::vector<Record> effective = apply_condition(s, dataset_);
    const double scale = sensitivity(q, dataset_) / eps;
    const double value = eval_query(q, effective) + sample_laplace(rng_, scale);
    memo_.emplace(std::move(key), value);
    accountant_.charge(effective, eps);
    if (accountant_.total() > eps_limit_) {
      aborted_ = true;  // permanent; the triggering answer is withheld
      return std::nullopt;
    }
    trace_.push_back(eps);
    return Answer{value, eps};
  }

  // Mechanism's-perspective consumed budget: max per-record spend.
  double total_consumed() const { return accountant_.total(); }

  bool aborted() const { return aborted_; }
  const Dataset& dataset() const { return dataset_; }
  const BudgetAccountant& accountant() const { return accountant_; }

  // Charges for every answered issue, in order (0.0 for memo hits).
  // Aborted issues produced no answer and do not appear.
  const std::vector<double>& trace() const { return trace_; }

 private:
  Dataset dataset_;
  double eps_limit_;
  RngStream rng_;
  std::map<QueryKey, double> memo_;
  BudgetAccountant accountant_;
  std::vector<double> trace_;
  bool aborted_ = false;
};

// The querier's-perspective total: the naive sequential sum of charges
// over answered, non-memoized issues. Contrast with total_consumed() --
// the two agree only when every query touches a common record.
inline double attacker_view_consumed(const std::vector<double>& trace) {
  NeumaierSum sum;
  for (double eps : trace) sum.add(eps);
  return sum.total();
}

}  // namespace linleak

#endif  // LINLEAK_MECHANISM_HPP
