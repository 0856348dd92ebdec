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

#include "sitl1/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "sitl1/errors.hpp"

namespace sitl1 {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::vector<double>> load_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::vector<double> row;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
      size_t pos = 0;
      double v;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw ConfigError("bad number '" + cell + "' in " + path);
      }
      if (cell.find_first_not_of(" \t\r", pos) != std::string::npos)
        throw ConfigError("bad number '" + cell + "' in " + path);
      row.push_back(v);
    }
    if (row.empty()) throw ConfigError("empty row in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("no data in " + path);
  for (const auto& r : rows)
    if (r.size() != rows.front().size())
      throw ConfigError("ragged rows in " + path);
  return rows;
}

}  // namespace

Matrix load_matrix_csv(const std::string& path) {
  auto rows = load_rows(path);
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  require_finite(m.data(), "matrix file entries");
  return m;
}

Vector load_vector_csv(const std::string& path) {
  auto rows = load_rows(path);
  Vector v;
  if (rows.front().size() == 1) {
    for (const auto& r : rows) v.push_back(r[0]);
  } else if (rows.size() == 1) {
    v = rows.front();
  } else {
    throw ConfigError(path + " is not a vector (need one row or one column)");
  }
  require_finite(v, "vector file entries");
  return v;
}

void save_matrix_csv(const std::string& path, const Matrix& m) {
  CsvWriter w(path);
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<std::string> cells;
    cells.reserve(m.cols());
    for (int j = 0; j < m.cols(); ++j) cells.push_back(format_number(m(i, j)));
    w.row(cells);
  }
}

void save_vector_csv(const std::string& path, const Vector& v) {
  CsvWriter w(path);
  for (double c : v) w.row({format_number(c)});
}

CsvWriter::CsvWriter(const std::string& path, bool append) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  if (append) created_ = !std::filesystem::exists(p);
  out_.open(path, append ? std::ios::app : std::ios::trunc);
  if (!out_) throw ConfigError("cannot write " + path);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace sitl1
