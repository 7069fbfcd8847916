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

#include "blowlab/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace blowlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

struct RawEntry {
  std::string value;
  int line;
  bool used = false;
};

class RawConfig {
 public:
  void insert(const std::string& section, const std::string& key,
              const std::string& value, int line) {
    const std::string full = section + "." + key;
    if (entries_.count(full))
      fail(line, "duplicate key '" + full + "'");
    entries_[full] = RawEntry{value, line};
  }

  bool has(const std::string& full) const { return entries_.count(full) > 0; }

  std::optional<std::string> take(const std::string& full) {
    auto it = entries_.find(full);
    if (it == entries_.end()) return std::nullopt;
    it->second.used = true;
    return it->second.value;
  }

  int line_of(const std::string& full) const {
    auto it = entries_.find(full);
    return it == entries_.end() ? 0 : it->second.line;
  }

  void check_all_used() const {
    for (const auto& [key, entry] : entries_) {
      if (!entry.used) fail(entry.line, "unknown key '" + key + "'");
    }
  }

 private:
  std::map<std::string, RawEntry> entries_;
};

double to_double(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    fail(line, "key '" + key + "': expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& v, int line, const std::string& key) {
  const double x = to_double(v, line, key);
  const int i = static_cast<int>(std::lround(x));
  if (std::abs(x - i) > 1e-9)
    fail(line, "key '" + key + "': expected an integer, got '" + v + "'");
  return i;
}

class Reader {
 public:
  Reader(RawConfig& raw) : raw_(raw) {}

  double num(const std::string& key, double fallback) {
    auto v = raw_.take(key);
    if (!v) return fallback;
    return to_double(*v, raw_.line_of(key), key);
  }
  std::optional<double> num_opt(const std::string& key) {
    auto v = raw_.take(key);
    if (!v) return std::nullopt;
    return to_double(*v, raw_.line_of(key), key);
  }
  int integer(const std::string& key, int fallback) {
    auto v = raw_.take(key);
    if (!v) return fallback;
    return to_int(*v, raw_.line_of(key), key);
  }
  std::string str(const std::string& key, const std::string& fallback) {
    auto v = raw_.take(key);
    return v ? *v : fallback;
  }
  std::optional<std::string> str_opt(const std::string& key) {
    return raw_.take(key);
  }
  int line(const std::string& key) const { return raw_.line_of(key); }
  void require(const std::string& key) {
    if (!raw_.has(key))
      throw ConfigError("config: required key '" + key + "' missing");
  }

 private:
  RawConfig& raw_;
};

std::vector<std::array<double, 3>> parse_centers(const std::string& value,
                                                 int dim, int line) {
  std::vector<std::array<double, 3>> centers;
  std::stringstream points(value);
  std::string point;
  while (std::getline(points, point, ';')) {
    point = trim(point);
    if (point.empty()) continue;
    std::array<double, 3> a{0.0, 0.0, 0.0};
    std::stringstream coords(point);
    std::string coord;
    int d = 0;
    while (std::getline(coords, coord, ',')) {
      coord = trim(coord);
      if (d >= dim)
        fail(line, "center '" + point + "' has more than N coordinates");
      a[d++] = to_double(coord, line, "similarity.centers");
    }
    if (d != dim)
      fail(line, "center '" + point + "' needs N coordinates");
    centers.push_back(a);
  }
  return centers;
}

void load_table(const std::string& path, const GridSpec& grid,
                InitialCondition& ic, int line) {
  std::ifstream in(path);
  if (!in) fail(line, "cannot open table file '" + path + "'");
  ic.table_u0.clear();
  ic.table_u1.clear();
  std::string row;
  while (std::getline(in, row)) {
    row = trim(row);
    if (row.empty() || row[0] == '#') continue;
    std::stringstream ss(row);
    std::string cell;
    double vals[2];
    int c = 0;
    while (std::getline(ss, cell, ',')) {
      if (c >= 2) fail(line, "table file: more than two columns");
      vals[c++] = to_double(trim(cell), line, "ic.file");
    }
    if (c != 2) fail(line, "table file: expected two columns u0,u1");
    ic.table_u0.push_back(vals[0]);
    ic.table_u1.push_back(vals[1]);
  }
  if (ic.table_u0.size() != grid.size())
    fail(line, "table file: " + std::to_string(ic.table_u0.size()) +
                   " rows, grid needs " + std::to_string(grid.size()));
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  RawConfig raw;
  {
    std::stringstream in(text);
    std::string line_text;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line_text)) {
      ++line_no;
      std::string line = trim(line_text);
      if (line.empty() || line[0] == '#' || line[0] == ';') continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "unterminated section header");
        section = trim(line.substr(1, line.size() - 2));
        static const char* known[] = {"model",      "grid",   "ic",
                                      "solver",     "similarity",
                                      "energy",     "bounds", "output"};
        bool ok = false;
        for (const char* k : known) ok = ok || section == k;
        if (!ok) fail(line_no, "unknown section '" + section + "'");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (section.empty()) fail(line_no, "key outside any section");
      if (key.empty()) fail(line_no, "empty key");
      raw.insert(section, key, value, line_no);
    }
  }

  Reader rd(raw);
  RunConfig cfg;
  cfg.source_text = text;

  // [model]
  rd.require("model.p");
  const int N = rd.integer("model.N", 1);
  const double p = rd.num("model.p", 2.0);
  const auto alpha = rd.num_opt("model.alpha");
  if (!(p > 1.0)) fail(rd.line("model.p"), "p > 1 required");
  try {
    cfg.params = make_params(N, p, alpha ? *alpha : -1.0);
  } catch (const std::invalid_argument& e) {
    fail(rd.line(alpha ? "model.alpha" : "model.p"), e.what());
  }

  // [grid]
  const double L = rd.num("grid.L", 4.0);
  const int nx = rd.integer("grid.nx", 128);
  try {
    cfg.grid = GridSpec(N, L, nx);
  } catch (const std::invalid_argument& e) {
    fail(rd.line("grid.L") ? rd.line("grid.L") : rd.line("grid.nx"), e.what());
  }

  // [ic]
  const std::string kind = rd.str("ic.kind", "flat");
  if (kind == "flat") {
    cfg.ic.kind = InitialCondition::Kind::flat;
    cfg.ic.u0_const = rd.num("ic.u0", 0.0);
    cfg.ic.u1_const = rd.num("ic.u1", 1.0);
  } else if (kind == "gaussian") {
    cfg.ic.kind = InitialCondition::Kind::gaussian;
    cfg.ic.width = rd.num("ic.width", 0.5);
    cfg.ic.u0_amp = rd.num("ic.u0_amp", 0.0);
    cfg.ic.u1_amp = rd.num("ic.u1_amp", 0.0);
    cfg.ic.u1_base = rd.num("ic.u1_base", 0.0);
    if (auto c = rd.str_opt("ic.center")) {
      const auto pts = parse_centers(*c, N, rd.line("ic.center"));
      if (pts.size() != 1)
        fail(rd.line("ic.center"), "ic.center: exactly one point expected");
      cfg.ic.center = pts[0];
    }
    if (cfg.ic.width < 2.0 * cfg.grid.dx())
      fail(rd.line("ic.width") ? rd.line("ic.width") : rd.line("ic.kind"),
           "gaussian width < 2*dx is unresolved on this grid");
  } else if (kind == "table") {
    cfg.ic.kind = InitialCondition::Kind::table;
    rd.require("ic.file");
    const std::string file = rd.str("ic.file", "");
    const std::string path =
        file.empty() || file[0] == '/' ? file : base_dir + "/" + file;
    load_table(path, cfg.grid, cfg.ic, rd.line("ic.file"));
  } else {
    fail(rd.line("ic.kind"), "ic.kind must be flat, gaussian or table");
  }

  // [solver]
  cfg.limits.cfl = rd.num("solver.cfl", 0.5);
  cfg.limits.safety = rd.num("solver.safety", 0.1);
  cfg.blowup_threshold = rd.num("solver.blowup_threshold", 1e8);
  cfg.t_max = rd.num("solver.t_max", 10.0);
  cfg.stencil_order = rd.integer("solver.stencil", 2);
  if (!(cfg.limits.cfl > 0.0 && cfg.limits.cfl <= 1.0))
    fail(rd.line("solver.cfl"), "cfl must lie in (0, 1]");
  if (!(cfg.limits.safety > 0.0))
    fail(rd.line("solver.safety"), "safety must be positive");
  if (!(cfg.blowup_threshold > 1.0))
    fail(rd.line("solver.blowup_threshold"), "threshold must exceed 1");
  if (!(cfg.t_max > 0.0)) fail(rd.line("solver.t_max"), "t_max > 0 required");
  if (cfg.stencil_order != 2 && cfg.stencil_order != 4)
    fail(rd.line("solver.stencil"), "stencil must be 2 or 4");

  // [similarity]
  if (auto c = rd.str_opt("similarity.centers")) {
    cfg.sim.centers = parse_centers(*c, N, rd.line("similarity.centers"));
    for (const auto& a : cfg.sim.centers) {
      for (int d = 0; d < N; ++d) {
        if (std::abs(a[d]) + 1.0 > L + 1e-12)
          fail(rd.line("similarity.centers"),
               "center leaves no room for the unit ball inside the domain");
      }
    }
  }
  const std::string tp = rd.str("similarity.T_prime", "estimate");
  if (tp == "estimate") {
    cfg.sim.estimate_T_prime = true;
  } else {
    cfg.sim.estimate_T_prime = false;
    cfg.sim.T_prime_fixed =
        to_double(tp, rd.line("similarity.T_prime"), "similarity.T_prime");
    if (!(cfg.sim.T_prime_fixed > 0.0))
      fail(rd.line("similarity.T_prime"), "T_prime must be positive");
  }
  cfg.sim.s0_offset = rd.num("similarity.s0_offset", 0.0);
  cfg.sim.ds = rd.num("similarity.ds", 0.1);
  cfg.sim.s_max = rd.num("similarity.s_max", 6.0);
  cfg.sim.nz = rd.integer("similarity.nz", 0);
  if (!(cfg.sim.ds > 0.0)) fail(rd.line("similarity.ds"), "ds > 0 required");
  if (cfg.sim.s0_offset < 0.0)
    fail(rd.line("similarity.s0_offset"), "s0_offset must be >= 0");
  if (cfg.sim.nz != 0 && cfg.sim.nz < 8)
    fail(rd.line("similarity.nz"), "nz must be 0 (auto) or >= 8");

  // [energy]
  const std::string conv = rd.str("energy.convention", "as_stated");
  if (conv == "as_stated") {
    cfg.energy.convention = T3Convention::as_stated;
  } else if (conv == "proof_i1") {
    cfg.energy.convention = T3Convention::proof_i1;
  } else {
    fail(rd.line("energy.convention"),
         "convention must be as_stated or proof_i1");
  }
  cfg.energy.C_hypothesis = rd.num_opt("energy.C_hypothesis");

  // [bounds]
  cfg.bounds.r = rd.num("bounds.r", 3.0);
  if (cfg.bounds.r < 1.0) fail(rd.line("bounds.r"), "r >= 1 required");
  if (N >= 3 && cfg.bounds.r > 2.0 * N / (N - 2.0) + 1e-12)
    fail(rd.line("bounds.r"), "r beyond the 2N/(N-2) embedding range");

  // [output]
  cfg.output.directory = rd.str("output.directory", "out");
  cfg.output.format = rd.str("output.format", "csv");
  if (cfg.output.format != "csv")
    fail(rd.line("output.format"), "only the csv format is implemented");

  raw.check_all_used();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string dir = ".";
  const auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return parse_config(buf.str(), dir);
}

int effective_nz(const RunConfig& config) {
  if (config.sim.nz != 0) return config.sim.nz;
  // match the ball resolution to the solver grid, rounded so that 0 and
  // +-1/2 are grid points
  const int quarter =
      std::max(4, static_cast<int>(std::lround(0.5 / config.grid.dx())));
  return 4 * quarter + 1;
}

}  // namespace blowlab
