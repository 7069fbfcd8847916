/*
 *  Copyright 2026 the blowlab authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include "blowlab/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace blowlab {

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
  if (!out_) throw std::runtime_error("cannot open output file '" + path + "'");
}

void CsvWriter::comment(const std::string& text) {
  out_ << "# " << text << "\n";
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out_ << ",";
    out_ << names[i];
  }
  out_ << "\n";
}

CsvWriter& CsvWriter::cell(double v) {
  if (row_open_) out_ << ",";
  out_ << csv_num(v);
  row_open_ = true;
  return *this;
}

CsvWriter& CsvWriter::cell(const std::string& v) {
  if (row_open_) out_ << ",";
  out_ << v;
  row_open_ = true;
  return *this;
}

void CsvWriter::end_row() {
  out_ << "\n";
  row_open_ = false;
}

}  // namespace blowlab
