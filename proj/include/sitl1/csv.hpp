// Copyright 2026 The sitl1 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SITL1_CSV_HPP_
#define SITL1_CSV_HPP_

#include <fstream>
#include <string>
#include <vector>

#include "sitl1/matrix.hpp"

namespace sitl1 {

// Round-trip decimal rendering (%.17g); identical bytes for identical doubles.
std::string format_number(double v);

// Plain CSV of decimal numbers, one row per line, no header.
Matrix load_matrix_csv(const std::string& path);
Vector load_vector_csv(const std::string& path);  // single column or single row
void save_matrix_csv(const std::string& path, const Matrix& m);
void save_vector_csv(const std::string& path, const Vector& v);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path, bool append = false);
  void row(const std::vector<std::string>& cells);
  bool created() const { return created_; }  // false when appending to existing

 private:
  std::ofstream out_;
  bool created_ = true;
};

}  // namespace sitl1

#endif  // SITL1_CSV_HPP_
