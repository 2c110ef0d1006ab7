//===--- core.hpp - records, datasets, and linear queries ------------------===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//
//
// Data model for identified records and the two linear aggregate queries
// (Count, Sum) evaluated over explicit id-set conditions. "Linear" means
// q(A ∪ B) = q(A) + q(B) for disjoint A and B; everything the attacker
// module does rests on that identity, so evaluation here is exact and
// noise-free. All types are immutable after construction.
//
//===----------------------------------------------------------------------===//

#ifndef LINLEAK_CORE_HPP
#define LINLEAK_CORE_HPP

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace linleak {

struct Record {
  std::string id;
  double value = 0.0;  // used by Sum only; Count ignores it
};

// A set of records keyed by id. Insertion has set semantics: re-inserting
// an existing id is a no-op. When a positive value bound is declared,
// every inserted value must satisfy |value| <= bound; the bound doubles as
// the Sum query's sensitivity.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(double value_bound) : value_bound_(value_bound) {
    if (!(value_bound > 0.0))
      throw std::invalid_argument("Dataset: value bound must be positive");
  }

  void insert(const Record& r) {
    if (value_bound_ > 0.0 && !(std::fabs(r.value) <= value_bound_))
      throw std::invalid_argument("Dataset: record value exceeds declared bound");
    records_.emplace(r.id, r.value);
  }

  bool contains(const std::string& id) const { return records_.count(id) != 0; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  double value_bound() const { return value_bound_; }

  double value_of(const std::string& id) const {
    auto it = records_.find(id);
    if (it == records_.end())
      throw std::invalid_argument("Dataset: unknown record id: " + id);
    return it->second;
  }

  // Ordered iteration (by id) keeps every consumer deterministic.
  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

 private:
  std::map<std::string, double> records_;
  double value_bound_ = 0.0;  // 0 means "not declared"
};

enum class QueryKind { Count, Sum };

struct LinearQuery {
  QueryKind kind = QueryKind::Count;

  static LinearQuery count() { return {QueryKind::Count}; }
  static LinearQuery sum() { return {QueryKind::Sum}; }
};

// An explicit, extensional condition: the query is evaluated over the
// records of the dataset whose ids appear in member_ids (the effective
// set). Predicates are modeled by pre-resolving them to id sets.
struct Condition {
  std::set<std::string> member_ids;
};

// Exact query evaluation over a plain record set (no noise, no budget).
inline double eval_query(const LinearQuery& q, const std::vector<Record>& records) {
  if (q.kind == QueryKind::Count) return static_cast<double>(records.size());
  double total = 0.0;
  for (const Record& r : records) total += r.value;
  return total;
}

// The effective set of a condition over a dataset: exactly the records of
// D whose ids are listed in s. Records named by s but absent from D
// contribute nothing (and later, cost nothing).
inline std::vector<Record> apply_condition(const Condition& s, const Dataset& d) {
  std::vector<Record> out;
  for (const auto& [id, value] : d) {
    if (s.member_ids.count(id)) out.push_back({id, value});
  }
  return out;
}

// Global sensitivity: the largest change one record's presence can make.
// Count: 1. Sum: the dataset's declared value bound, which must be positive.
inline double sensitivity(const LinearQuery& q, const Dataset& d) {
  if (q.kind == QueryKind::Count) return 1.0;
  if (!(d.value_bound() > 0.0))
    throw std::invalid_argument(
        "sensitivity: Sum requires a positive declared value bound");
  return d.value_bound();
}

}  // namespace linleak

#endif  // LINLEAK_CORE_HPP
