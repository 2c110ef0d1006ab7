//===--- dataset_io_test.cpp - JSON-lines parsing ----------------------------===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//

#include "linleak/dataset_io.hpp"

#include <sstream>

#include <gtest/gtest.h>

namespace linleak {
namespace {

Dataset parse(const std::string& text, double bound = 0.0) {
  std::istringstream in(text);
  return load_dataset(in, bound);
}

TEST(LoadDataset, ParsesWellFormedLines) {
  const Dataset d = parse(
      "{\"id\": \"b1\", \"value\": 1.5}\n"
      "{\"id\": \"b2\", \"value\": -2}\n");
  EXPECT_EQ(d.size(), 2u);
  EXPECT_DOUBLE_EQ(d.value_of("b1"), 1.5);
  EXPECT_DOUBLE_EQ(d.value_of("b2"), -2.0);  // integers widen to double
}

TEST(LoadDataset, SkipsBlankLines) {
  const Dataset d = parse("\n{\"id\": \"a\", \"value\": 0}\n   \n\n");
  EXPECT_EQ(d.size(), 1u);
}

TEST(LoadDataset, DuplicateIdKeepsFirstValue) {
  const Dataset d = parse(
      "{\"id\": \"a\", \"value\": 1}\n"
      "{\"id\": \"a\", \"value\": 9}\n");
  EXPECT_EQ(d.size(), 1u);
  EXPECT_DOUBLE_EQ(d.value_of("a"), 1.0);
}

TEST(LoadDataset, ToleratesExtraFields) {
  const Dataset d = parse("{\"id\": \"a\", \"value\": 1, \"note\": \"hi\"}\n");
  EXPECT_EQ(d.size(), 1u);
}

TEST(LoadDataset, RejectsMalformedJson) {
  EXPECT_THROW(parse("{\"id\": \"a\", \"value\": }\n"), DataFormatError);
  EXPECT_THROW(parse("not json at all\n"), DataFormatError);
}

TEST(LoadDataset, RejectsNonObjectLines) {
  EXPECT_THROW(parse("[1, 2, 3]\n"), DataFormatError);
  EXPECT_THROW(parse("42\n"), DataFormatError);
}

TEST(LoadDataset, RejectsMissingOrMistypedFields) {
  EXPECT_THROW(parse("{\"id\": \"a\"}\n"), DataFormatError);
  EXPECT_THROW(parse("{\"value\": 1}\n"), DataFormatError);
  EXPECT_THROW(parse("{\"id\": 7, \"value\": 1}\n"), DataFormatError);
  EXPECT_THROW(parse("{\"id\": \"a\", \"value\": \"big\"}\n"), DataFormatError);
}

TEST(LoadDataset, AppliesValueBound) {
  EXPECT_NO_THROW(parse("{\"id\": \"a\", \"value\": 2}\n", 2.0));
  EXPECT_THROW(parse("{\"id\": \"a\", \"value\": 3}\n", 2.0), DataFormatError);
}

TEST(LoadDatasetFile, MissingFileIsDataError) {
  EXPECT_THROW(load_dataset_file("/nonexistent/path/data.jsonl"),
               DataFormatError);
}

}  // namespace
}  // namespace linleak
