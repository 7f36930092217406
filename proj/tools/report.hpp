// Copyright 2026 The vcl Authors
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

// JSON and CSV rendering of experiment reports.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "vcl/integer.hpp"
#include "vcl/words.hpp"

namespace vcl::cli {

using Json = nlohmann::ordered_json;

inline Json to_json(const Integer& x) {
  if (auto v = to_int64(x)) return *v;
  return x.str();
}

inline Json to_json(const Rational& x) { return to_string(x); }

inline std::string word_text(const Word& w) {
  return w.is_identity() ? std::string("1") : format_compact(w);
}

inline Json to_json(const Word& w) { return word_text(w); }

inline Json words_json(const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(word_text(w));
  return out;
}

inline std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

/// A report with a "table" array of objects renders as that table; any
/// other report renders its scalar fields and flat arrays (space-joined)
/// as key,value rows.
inline void write_csv(std::ostream& out, const Json& report) {
  if (report.contains("table") && report["table"].is_array() && !report["table"].empty() &&
      report["table"].front().is_object()) {
    const auto& rows = report["table"];
    bool first = true;
    for (const auto& item : rows.front().items()) {
      out << (first ? "" : ",") << item.key();
      first = false;
    }
    out << '\n';
    for (const auto& row : rows) {
      first = true;
      for (const auto& item : rows.front().items()) {
        out << (first ? "" : ",") << csv_cell(row.value(item.key(), Json()));
        first = false;
      }
      out << '\n';
    }
    return;
  }
  out << "key,value\n";
  for (const auto& item : report.items()) {
    const Json& v = item.value();
    if (v.is_object()) continue;
    if (v.is_array()) {
      std::string joined;
      bool flat = true;
      for (const auto& x : v) {
        if (x.is_structured()) flat = false;
        if (!joined.empty()) joined += ' ';
        joined += x.is_string() ? x.get<std::string>() : x.dump();
      }
      if (!flat) continue;
      out << csv_cell(item.key()) << ',' << csv_cell(joined) << '\n';
      continue;
    }
    out << csv_cell(item.key()) << ',' << csv_cell(v) << '\n';
  }
}

}  // namespace vcl::cli
