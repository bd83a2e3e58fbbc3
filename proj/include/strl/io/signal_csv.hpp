#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "strl/error.hpp"
#include "strl/stl/signal.hpp"

namespace strl::io {

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(trim(tok));
  return out;
}

inline bool parse_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace detail

/// One row per time step, one column per dimension. An optional header row
/// is recognized by non-numeric cells; a leading `t` column is dropped.
inline stl::Signal parse_signal_csv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool first = true, drop_time = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_row(line);
    std::vector<double> values;
    bool numeric = true;
    for (const auto& c : cells) {
      double v;
      if (!detail::parse_double(c, v)) {
        numeric = false;
        break;
      }
      values.push_back(v);
    }
    if (!numeric) {
      if (!first) throw EvaluationError("signal CSV line " + std::to_string(lineno) + " is not numeric");
      std::string head = cells.front();
      std::transform(head.begin(), head.end(), head.begin(), [](unsigned char c) { return std::tolower(c); });
      drop_time = head == "t";
      first = false;
      continue;
    }
    first = false;
    if (drop_time) {
      if (values.size() < 2) throw EvaluationError("signal CSV line " + std::to_string(lineno) + " has no data columns");
      values.erase(values.begin());
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw EvaluationError("signal CSV has no samples");
  return stl::Signal(rows);
}

}  // namespace strl::io
