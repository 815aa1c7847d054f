// Copyright 2026 The qmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qmeter/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qmeter::cli {
namespace {

using json = nlohmann::json;

std::string number(double v) {
  if (!std::isfinite(v)) throw std::domain_error("report contains a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(const json& v, int depth, std::string& out) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(key).dump() + ": ";
        write(value, depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); });
      out += flat ? "[" : "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += flat ? ", " : ",\n";
        if (!flat) out += pad;
        write(v[i], depth + 1, out);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case json::value_t::number_float:
      out += number(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
}

json to_json(const Report& r) {
  json tables = json::object();
  for (const auto& [name, t] : r.tables) {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json cells = json::array();
      for (const auto& c : row) cells.push_back(c ? json(*c) : json(nullptr));
      rows.push_back(std::move(cells));
    }
    tables[name] = {{"columns", t.columns}, {"rows", std::move(rows)}};
  }
  json out = {
      {"scenario", r.scenario},
      {"kind", r.kind},
      {"scalars", r.scalars.empty() ? json::object() : json(r.scalars)},
      {"flags", r.flags.empty() ? json::object() : json(r.flags)},
      {"checks", r.checks.empty() ? json::object() : json(r.checks)},
      {"notes", r.notes.empty() ? json::object() : json(r.notes)},
      {"tables", std::move(tables)},
      {"pass", r.pass()},
  };
  if (r.wall_time) out["wall_time_s"] = *r.wall_time;
  return out;
}

std::string write_json(const json& v) {
  std::string out;
  write(v, 0, out);
  out += "\n";
  return out;
}

std::string emit_report(const Report& r, Format format) {
  if (format == Format::kJson) return write_json(to_json(r));
  std::string out = "path,value\n";
  for (const auto& [k, v] : r.scalars) out += csv_field("scalars." + k) + "," + number(v) + "\n";
  for (const auto& [k, v] : r.flags) out += csv_field("flags." + k) + "," + (v ? "true" : "false") + "\n";
  for (const auto& [k, v] : r.checks) out += csv_field("checks." + k) + "," + (v ? "true" : "false") + "\n";
  for (const auto& [k, v] : r.notes) out += csv_field("notes." + k) + "," + csv_field(v) + "\n";
  for (const auto& [name, t] : r.tables) {
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      std::string cells;
      for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
        if (j > 0) cells += ';';
        cells += t.rows[i][j] ? number(*t.rows[i][j]) : "null";
      }
      out += csv_field("tables." + name + "." + std::to_string(i)) + "," + cells + "\n";
    }
  }
  return out;
}

}  // namespace qmeter::cli
