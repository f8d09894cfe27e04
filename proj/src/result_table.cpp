// Copyright 2026 The ubm-toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ubm/result_table.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace ubm {

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("ResultTable: no columns");
}

void ResultTable::add_meta(const std::string& key, const std::string& value) {
  meta_.emplace_back(key, value);
}

void ResultTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument("ResultTable: row width mismatch");
  }
  rows_.push_back(std::move(cells));
}

std::string ResultTable::fmt(double v) {
  char buf[40];
  // %.17g is exact for doubles; trim to the shortest representation that
  // round-trips so the output stays diff-friendly.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

std::string ResultTable::fmt(long long v) { return std::to_string(v); }

void ResultTable::write(std::ostream& os) const {
  for (const auto& [k, v] : meta_) os << "# " << k << "=" << v << "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    os << columns_[c] << (c + 1 < columns_.size() ? "," : "");
  }
  os << "\n";
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << row[c] << (c + 1 < row.size() ? "," : "");
    }
    os << "\n";
  }
}

void ResultTable::write_file(const std::string& path) const {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("ResultTable: cannot open " + path);
  write(out);
}

}  // namespace ubm
