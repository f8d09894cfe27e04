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

#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ubm {

inline constexpr const char* kToolVersion = "0.1.0";

/// Fixed-schema numeric table with a '#'-prefixed metadata block, written as
/// CSV: UTF-8, '.' decimal separator, LF line endings.  All cells are
/// preformatted strings so that identical inputs serialize byte-identically.
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> columns);

  void add_meta(const std::string& key, const std::string& value);
  void add_row(std::vector<std::string> cells);

  /// Shortest round-trip decimal rendering of a double.
  static std::string fmt(double v);
  static std::string fmt(long long v);
  static std::string fmt(int v) { return fmt(static_cast<long long>(v)); }

  std::size_t rows() const { return rows_.size(); }
  void write(std::ostream& os) const;
  /// Writes to the path, or to stdout when path is empty or "-".
  void write_file(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace ubm
