//===--- dataset_io.hpp - JSON-lines dataset loading ------------------------===//
//
// Part of the linleak project, released under the Apache License v2.0.
// See LICENSE for details.
//
//===----------------------------------------------------------------------===//
//
// Dataset files are JSON lines: one object per line with a string "id"
// and a numeric "value". Blank lines are ignored; anything else is a
// data-format error. Duplicate ids follow Dataset's set semantics (the
// first occurrence wins).
//
//===----------------------------------------------------------------------===//

#ifndef LINLEAK_DATASET_IO_HPP
#define LINLEAK_DATASET_IO_HPP

#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "linleak/core.hpp"

namespace linleak {

struct DataFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Dataset load_dataset(std::istream& in, double value_bound = 0.0) {
  Dataset d = value_bound > 0.0 ? Dataset(value_bound) : Dataset();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataFormatError("line " + std::to_string(line_no) +
                            ": invalid JSON: " + e.what());
    }
    if (!obj.is_object() || !obj.contains("id") || !obj.contains("value"))
      throw DataFormatError("line " + std::to_string(line_no) +
                            ": expected an object with \"id\" and \"value\"");
    if (!obj["id"].is_string())
      throw DataFormatError("line " + std::to_string(line_no) +
                            ": \"id\" must be a string");
    if (!obj["value"].is_number())
      throw DataFormatError("line " + std::to_string(line_no) +
                            ": \"value\" must be a number");
    try {
      d.insert({obj["id"].get<std::string>(), obj["value"].get<double>()});
    } catch (const std::invalid_argument& e) {
      throw DataFormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return d;
}

inline Dataset load_dataset_file(const std::string& path,
                                 double value_bound = 0.0) {
  std::ifstream in(path);
  if (!in) throw DataFormatError("cannot open dataset file: " + path);
  return load_dataset(in, value_bound);
}

}  // namespace linleak

#endif  // LINLEAK_DATASET_IO_HPP
