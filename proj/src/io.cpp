// Copyright 2026 The kfp Authors
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
#include "kfp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace kfp::io {

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) out[k] = digits[h & 0xf];
  return out;
}

namespace {

std::string header(const Stamp& s) {
  return "# kfp " + s.version + " config " + s.config_hash + "\n";
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    const auto a = cell.find_first_not_of(" \t\r");
    const auto b = cell.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? std::string() : cell.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace

std::string field_csv(const SolutionField& field, const Stamp& stamp) {
  std::string out = header(stamp) + "t,x,v,f\n";
  const std::string t = format_double(field.t);
  for (int i = 0; i < field.xgrid.size(); ++i) {
    const std::string x = format_double(field.xgrid.x[i]);
    for (int j = 0; j < field.vgrid.size(); ++j) {
      out += t;
      out += ',';
      out += x;
      out += ',';
      out += format_double(field.vgrid.v[j]);
      out += ',';
      out += format_double(field.at(i, j));
      out += '\n';
    }
  }
  return out;
}

diagnostics::GriddedField read_field_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<std::string> columns;
  int lineno = 0;
  struct Row {
    double t, x, v, f;
  };
  std::vector<Row> rows;
  auto bad = [&](const std::string& what) {
    std::ostringstream os;
    os << path << ":" << lineno << ": " << what;
    throw Error(ErrorCode::config_error, os.str());
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    auto cells = split(line);
    if (columns.empty()) {
      columns = cells;
      continue;
    }
    if (cells.size() != columns.size()) bad("expected " + std::to_string(columns.size()) + " columns");
    Row r{0.0, 0.0, 0.0, 0.0};
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double value = 0.0;
      const auto& s = cells[c];
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || ptr != s.data() + s.size()) bad("malformed number '" + s + "'");
      const auto& name = columns[c];
      if (name == "t") r.t = value;
      else if (name == "x") r.x = value;
      else if (name == "v") r.v = value;
      else if (name == "f") r.f = value;
    }
    rows.push_back(r);
  }
  for (const char* need : {"x", "v", "f"})
    if (std::find(columns.begin(), columns.end(), need) == columns.end())
      throw Error(ErrorCode::config_error, path + ": missing column '" + need + "'");
  if (rows.empty()) throw Error(ErrorCode::config_error, path + ": no data rows");

  auto axis = [&](double Row::*m) {
    std::vector<double> a;
    for (const auto& r : rows) a.push_back(r.*m);
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
  };
  diagnostics::GriddedField g;
  g.t = axis(&Row::t);
  g.x = axis(&Row::x);
  g.v = axis(&Row::v);
  const std::size_t total = g.t.size() * g.x.size() * g.v.size();
  if (rows.size() != total) {
    std::ostringstream os;
    os << path << ": " << rows.size() << " rows do not fill a " << g.t.size() << " x "
       << g.x.size() << " x " << g.v.size() << " grid";
    throw Error(ErrorCode::config_error, os.str());
  }
  g.f.assign(total, std::numeric_limits<double>::quiet_NaN());
  auto index = [](const std::vector<double>& a, double v) {
    return static_cast<std::size_t>(std::lower_bound(a.begin(), a.end(), v) - a.begin());
  };
  for (const auto& r : rows) {
    const std::size_t k = (index(g.t, r.t) * g.x.size() + index(g.x, r.x)) * g.v.size() +
                          index(g.v, r.v);
    if (!std::isnan(g.f[k])) throw Error(ErrorCode::config_error, path + ": duplicate grid node");
    g.f[k] = r.f;
  }
  return g;
}

std::string ledger_jsonl(const std::vector<LedgerEntry>& ledger, const Stamp& stamp) {
  std::string out =
      nlohmann::json{{"version", stamp.version}, {"config_hash", stamp.config_hash}}.dump() + "\n";
  for (const auto& e : ledger) {
    nlohmann::json j{{"step", e.step},
                     {"t", e.t},
                     {"dt", e.dt},
                     {"mass", e.mass},
                     {"energy", e.energy},
                     {"energy_change", e.energy_change},
                     {"boundary", e.boundary},
                     {"dissipation", e.dissipation},
                     {"rhs", e.rhs},
                     {"residual", e.residual},
                     {"mass_change", e.mass_change},
                     {"mass_boundary_flux", e.mass_boundary_flux}};
    out += j.dump() + "\n";
  }
  return out;
}

std::string profile_csv(const diagnostics::OscillationProfile& p, const Stamp& stamp) {
  std::string out = header(stamp) + "r,osc,nodes\n";
  for (std::size_t k = 0; k < p.r.size(); ++k)
    out += format_double(p.r[k]) + "," + format_double(p.osc[k]) + "," +
           std::to_string(p.nodes[k]) + "\n";
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) throw Error(ErrorCode::io_error, "cannot write " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace kfp::io
