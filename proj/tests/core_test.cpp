//===--- core_test.cpp - data model and linear query algebra ----------------===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//

#include "linleak/core.hpp"

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "linleak/rng.hpp"

namespace linleak {
namespace {

std::vector<Record> make_records(int n, double value = 0.0) {
  std::vector<Record> records;
  for (int i = 0; i < n; ++i)
    records.push_back({"b" + std::to_string(i), value});
  return records;
}

TEST(EvalQuery, CountAddsOverDisjointParts) {
  const auto all = make_records(3);
  EXPECT_EQ(eval_query(LinearQuery::count(), all), 3.0);
  const std::vector<Record> left{all[0], all[1]};
  const std::vector<Record> right{all[2]};
  EXPECT_EQ(eval_query(LinearQuery::count(), left) +
                eval_query(LinearQuery::count(), right),
            3.0);
}

TEST(EvalQuery, CountOfEmptySetIsZero) {
  EXPECT_EQ(eval_query(LinearQuery::count(), {}), 0.0);
}

TEST(EvalQuery, SumAddsValues) {
  const std::vector<Record> records{{"a", 1.5}, {"b", -0.5}};
  EXPECT_DOUBLE_EQ(eval_query(LinearQuery::sum(), records), 1.0);
}

TEST(ApplyCondition, IntersectsConditionWithDataset) {
  Dataset d;
  d.insert({"b1", 0.0});
  d.insert({"b2", 0.0});
  Condition s;
  s.member_ids = {"x", "b1"};
  const auto effective = apply_condition(s, d);
  ASSERT_EQ(effective.size(), 1u);
  EXPECT_EQ(effective[0].id, "b1");
}

TEST(ApplyCondition, SubsetConditionSelectsSubset) {
  Dataset d;
  d.insert({"b1", 0.0});
  d.insert({"b2", 0.0});
  d.insert({"b3", 0.0});
  Condition s;
  s.member_ids = {"b1", "b2"};
  const auto effective = apply_condition(s, d);
  ASSERT_EQ(effective.size(), 2u);
  EXPECT_EQ(effective[0].id, "b1");
  EXPECT_EQ(effective[1].id, "b2");
}

TEST(ApplyCondition, EmptyConditionSelectsNothing) {
  Dataset d;
  d.insert({"b1", 0.0});
  EXPECT_TRUE(apply_condition(Condition{}, d).empty());
}

TEST(ApplyCondition, Idempotent) {
  Dataset d;
  for (int i = 0; i < 6; ++i) d.insert({"b" + std::to_string(i), double(i)});
  Condition s;
  s.member_ids = {"b0", "b2", "b4", "ghost"};
  const auto once = apply_condition(s, d);
  Dataset narrowed;
  for (const Record& r : once) narrowed.insert(r);
  const auto twice = apply_condition(s, narrowed);
  ASSERT_EQ(once.size(), twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) {
    EXPECT_EQ(once[i].id, twice[i].id);
    EXPECT_EQ(once[i].value, twice[i].value);
  }
}

TEST(Sensitivity, CountIsAlwaysOne) {
  EXPECT_EQ(sensitivity(LinearQuery::count(), Dataset{}), 1.0);
  Dataset bounded(10.0);
  EXPECT_EQ(sensitivity(LinearQuery::count(), bounded), 1.0);
}

TEST(Sensitivity, SumIsTheDeclaredBound) {
  Dataset d(10.0);
  EXPECT_EQ(sensitivity(LinearQuery::sum(), d), 10.0);
}

TEST(Sensitivity, SumWithoutBoundIsRejected) {
  EXPECT_THROW(sensitivity(LinearQuery::sum(), Dataset{}), std::invalid_argument);
}

TEST(Dataset, InsertHasSetSemantics) {
  Dataset d;
  d.insert({"b1", 1.0});
  d.insert({"b1", 2.0});  // no-op: id already present
  EXPECT_EQ(d.size(), 1u);
  EXPECT_EQ(d.value_of("b1"), 1.0);
}

TEST(Dataset, EnforcesDeclaredValueBound) {
  Dataset d(2.0);
  d.insert({"ok", 2.0});  // boundary is allowed
  EXPECT_THROW(d.insert({"big", 2.5}), std::invalid_argument);
  EXPECT_THROW(d.insert({"neg", -2.5}), std::invalid_argument);
  EXPECT_THROW(Dataset{0.0}, std::invalid_argument);
  EXPECT_THROW(Dataset{-1.0}, std::invalid_argument);
}

TEST(Dataset, ValueOfUnknownIdThrows) {
  EXPECT_THROW(Dataset{}.value_of("nope"), std::invalid_argument);
}

// Property: q(A ∪ B) = q(A) + q(B) for random disjoint A, B.
TEST(LinearityProperty, HoldsForRandomDisjointSets) {
  RngStream rng(2024);
  for (int iter = 0; iter < 200; ++iter) {
    const int na = 1 + static_cast<int>(rng.next_u64() % 8);
    const int nb = 1 + static_cast<int>(rng.next_u64() % 8);
    std::vector<Record> a, b, both;
    for (int i = 0; i < na; ++i)
      a.push_back({"a" + std::to_string(i), rng.unit_open() * 10.0 - 5.0});
    for (int i = 0; i < nb; ++i)
      b.push_back({"b" + std::to_string(i), rng.unit_open() * 10.0 - 5.0});
    both = a;
    both.insert(both.end(), b.begin(), b.end());

    EXPECT_EQ(eval_query(LinearQuery::count(), both),
              eval_query(LinearQuery::count(), a) +
                  eval_query(LinearQuery::count(), b));
    const double sum_both = eval_query(LinearQuery::sum(), both);
    const double sum_parts = eval_query(LinearQuery::sum(), a) +
                             eval_query(LinearQuery::sum(), b);
    EXPECT_NEAR(sum_both, sum_parts,
                1e-12 * std::max(1.0, std::fabs(sum_both)));
  }
}

// Property: any partition of a set recombines to the whole-set answer.
TEST(DivisionProperty, PartitionSumsToWhole) {
  RngStream rng(77);
  for (int iter = 0; iter < 100; ++iter) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 12);
    const int k = 1 + static_cast<int>(rng.next_u64() % n);
    std::vector<Record> records;
    for (int i = 0; i < n; ++i)
      records.push_back({"r" + std::to_string(i), rng.unit_open() * 4.0 - 2.0});
    std::vector<std::vector<Record>> parts(k);
    for (int i = 0; i < n; ++i)
      parts[static_cast<int>(rng.next_u64() % k)].push_back(records[i]);

    double count_parts = 0.0, sum_parts = 0.0;
    for (const auto& part : parts) {
      count_parts += eval_query(LinearQuery::count(), part);
      sum_parts += eval_query(LinearQuery::sum(), part);
    }
    EXPECT_EQ(count_parts, eval_query(LinearQuery::count(), records));
    const double sum_whole = eval_query(LinearQuery::sum(), records);
    EXPECT_NEAR(sum_parts, sum_whole,
                1e-12 * std::max(1.0, std::fabs(sum_whole)));
  }
}

}  // namespace
}  // namespace linleak
