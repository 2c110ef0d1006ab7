//===--- attack.hpp - sample harvesting and the membership verdict ---------===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//
//
// The attacker. Holding local copies of some records of the protected
// dataset (the background knowledge), the attacker wants to decide
// whether one more record -- the target x -- is in it.
//
// Linearity is the lever: partition the known ids into m disjoint subsets
// D_1..D_m, and for each ask the mechanism for the query conditioned on
// D_i ∪ {x}. Adding back the locally computable q(D_know \ D_i) turns
// answer i into one noisy sample of q over D_know ∪ {x}. Because the
// effective sets D_i ∪ {x} are pairwise disjoint when x is absent, the
// mechanism charges each query to different records and its consumed
// total stays at the per-query epsilon -- while the attacker has gathered
// m independent samples, paying m * epsilon only in their own naive
// accounting. When x is present, every query touches x and the
// mechanism's total really is m * epsilon.
//
// The verdict is a one-sample t-test of the harvested samples against
// mu0 = q(D_know): mean mu0 means x contributed nothing (absent), mean
// above mu0 by x's contribution means present. An abort mid-harvest is
// itself a verdict: with disjoint subsets, only a present x can drive the
// mechanism's per-record total past its threshold, so abort => In.
//
//===----------------------------------------------------------------------===//

#ifndef LINLEAK_ATTACK_HPP
#define LINLEAK_ATTACK_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "linleak/core.hpp"
#include "linleak/mechanism.hpp"
#include "linleak/stats.hpp"

namespace linleak {

// Thrown when the background knowledge cannot support the requested
// number of samples (fewer known records than subsets).
struct InsufficientKnowledgeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AttackConfig {
  int m = 0;                          // number of samples to harvest
  double eps_total = 0.0;             // attacker-perspective total budget
  double alpha = 0.05;                // t-test significance level
  std::string target_id;              // x
  std::vector<std::string> known_ids; // D_know, in attacker-chosen order
  VarianceDivisor s_divisor = VarianceDivisor::M;

  double eps_per_query() const { return eps_total / m; }

  void validate() const {
    if (m < 2)
      throw std::invalid_argument("AttackConfig: need m >= 2 samples");
    if (!(eps_total > 0.0))
      throw std::invalid_argument("AttackConfig: total budget must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("AttackConfig: alpha must lie in (0, 1)");
    for (const auto& id : known_ids) {
      if (id == target_id)
        throw std::invalid_argument(
            "AttackConfig: target must not appear among known ids");
    }
  }
};

enum class Decision { In, Out, InViaAbort };

struct Verdict {
  Decision decision = Decision::Out;
  std::optional<TTestResult> t_test;  // absent for InViaAbort
  std::vector<double> samples;        // harvested (partial on abort)
  double attacker_budget = 0.0;       // answered queries * eps_per_query
  double mechanism_budget = 0.0;      // mechanism's total_consumed()
  bool degenerate = false;            // zero-spread samples forced Out
};

// Splits known_ids into m pairwise-disjoint nonempty subsets: the first m
// ids seed one singleton each (in list order), the remainder distribute
// round-robin. Deterministic, so harvests replay exactly.
inline std::vector<std::vector<std::string>> partition_known_ids(
    const std::vector<std::string>& known_ids, int m) {
  if (m < 1) throw std::invalid_argument("partition_known_ids: need m >= 1");
  if (known_ids.size() < static_cast<std::size_t>(m))
    throw InsufficientKnowledgeError(
        "partition_known_ids: fewer known records than requested subsets");
  std::vector<std::vector<std::string>> subsets(m);
  for (std::size_t j = 0; j < known_ids.size(); ++j)
    subsets[j % m].push_back(known_ids[j]);
  return subsets;
}

struct HarvestOutcome {
  std::vector<double> samples;  // partial when aborted
  bool aborted = false;
  int answered = 0;
};

namespace detail {

inline void check_known_copies(const AttackConfig& cfg,
                               const Dataset& d_know_values) {
  if (d_know_values.size() != cfg.known_ids.size())
    throw std::invalid_argument(
        "harvest_samples: local copies must cover exactly the known ids");
  for (const auto& id : cfg.known_ids) {
    if (!d_know_values.contains(id))
      throw std::invalid_argument(
          "harvest_samples: missing local copy of known record: " + id);
  }
}

}  // namespace detail

// Harvests up to m samples of q over D_know ∪ {x} from the mechanism.
// Sample i is the answer to q conditioned on D_i ∪ {x}, plus the locally
// evaluated q over D_know \ D_i. Stops at the first abort.
inline HarvestOutcome harvest_samples(Mechanism& mechanism, const LinearQuery& q,
                                      const AttackConfig& cfg,
                                      const Dataset& d_know_values) {
  cfg.validate();
  detail::check_known_copies(cfg, d_know_values);
  const auto subsets = partition_known_ids(cfg.known_ids, cfg.m);
  const double eps = cfg.eps_per_query();

  HarvestOutcome out;
  out.samples.reserve(cfg.m);
  for (const auto& subset : subsets) {
    Condition s;
    s.member_ids.insert(subset.begin(), subset.end());
    s.member_ids.insert(cfg.target_id);
    const IssueOutcome answer = mechanism.issue(q, s, eps);
    if (!answer) {
      out.aborted = true;
      return out;
    }
    std::set<std::string> in_subset(subset.begin(), subset.end());
    std::vector<Record> complement;
    for (const auto& [id, value] : d_know_values) {
      if (!in_subset.count(id)) complement.push_back({id, value});
    }
    out.samples.push_back(answer->value + eval_query(q, complement));
    ++out.answered;
  }
  return out;
}

// Decides membership from harvested samples: reject H0 (mean = mu0) at
// level alpha => In. Zero-spread samples cannot arise under continuous
// noise; if they somehow do, the attacker conservatively reports Out.
inline Verdict decide_from_samples(std::vector<double> samples, double mu0,
                                   double alpha, VarianceDivisor divisor) {
  Verdict v;
  v.samples = std::move(samples);
  try {
    TTestResult t = one_sample_t_test(v.samples, mu0, alpha, divisor);
    v.decision = t.reject_null ? Decision::In : Decision::Out;
    v.t_test = t;
  } catch (const DegenerateSampleError&) {
    v.decision = Decision::Out;
    v.degenerate = true;
  }
  return v;
}

// The full attack: harvest, then test. An abort anywhere during the
// harvest yields InViaAbort (no t-test is possible or needed).
inline Verdict attack(Mechanism& mechanism, const LinearQuery& q,
                      const AttackConfig& cfg, const Dataset& d_know_values) {
  HarvestOutcome h = harvest_samples(mechanism, q, cfg, d_know_values);
  const double eps = cfg.eps_per_query();
  if (h.aborted) {
    Verdict v;
    v.decision = Decision::InViaAbort;
    v.samples = std::move(h.samples);
    v.attacker_budget = h.answered * eps;
    v.mechanism_budget = mechanism.total_consumed();
    return v;
  }
  std::vector<Record> all_known;
  all_known.reserve(d_know_values.size());
  for (const auto& [id, value] : d_know_values) all_known.push_back({id, value});
  const double mu0 = eval_query(q, all_known);

  Verdict v = decide_from_samples(std::move(h.samples), mu0, cfg.alpha,
                                  cfg.s_divisor);
  v.attacker_budget = h.answered * eps;
  v.mechanism_budget = mechanism.total_consumed();
  return v;
}

// Labels the four situations an attacker can face, by whether the
// background knowledge suffices to exhaust the defender's budget and
// whether the target is actually a member: (no, no) -> 1, (no, yes) -> 2,
// (yes, no) -> 3, (yes, yes) -> 4.
inline int classify_case(bool enough_background, bool x_in_d) {
  if (!enough_background) return x_in_d ? 2 : 1;
  return x_in_d ? 4 : 3;
}

}  // namespace linleak

#endif  // LINLEAK_ATTACK_HPP
