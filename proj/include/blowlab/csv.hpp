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

#ifndef BLOWLAB_CSV_HPP
#define BLOWLAB_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

namespace blowlab {

/** Round-trip-exact decimal rendering of a double (17 significant digits). */
std::string csv_num(double v);

/** Line-oriented CSV writer; numeric cells go through csv_num. */
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& text);
  void header(const std::vector<std::string>& names);

  CsvWriter& cell(double v);
  CsvWriter& cell(const std::string& v);
  void end_row();

 private:
  std::ofstream out_;
  bool row_open_ = false;
};

}  // namespace blowlab

#endif  // BLOWLAB_CSV_HPP
