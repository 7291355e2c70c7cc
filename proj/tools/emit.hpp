// Deterministic report emission: fixed key order (ordered_json), floats
// printed with 17 significant digits, byte-stable across runs.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace emit {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void dump_json(const Json& j, std::string* out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out->push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out->push_back(',');
        first = false;
        *out += Json(it.key()).dump();
        out->push_back(':');
        dump_json(it.value(), out);
      }
      out->push_back('}');
      break;
    }
    case Json::value_t::array: {
      out->push_back('[');
      bool first = true;
      for (const auto& v : j) {
        if (!first) out->push_back(',');
        first = false;
        dump_json(v, out);
      }
      out->push_back(']');
      break;
    }
    case Json::value_t::number_float:
      *out += format_double(j.get<double>());
      break;
    default:
      *out += j.dump();
  }
}

inline std::string dump(const Json& j) {
  std::string out;
  dump_json(j, &out);
  out.push_back('\n');
  return out;
}

inline void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw racg::DomainError("cannot write output file: " + path);
  f << text;
}

class CsvBuilder {
 public:
  explicit CsvBuilder(const std::string& header) { rows_ = header + "\n"; }
  void row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) rows_ += ",";
      first = false;
      rows_ += c;
    }
    rows_ += "\n";
  }
  const std::string& str() const { return rows_; }

 private:
  std::string rows_;
};

inline std::string cell(double v) { return format_double(v); }
inline std::string cell(int v) { return std::to_string(v); }

}  // namespace emit
