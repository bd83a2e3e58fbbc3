#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "strl/env/grid_world.hpp"
#include "strl/error.hpp"
#include "strl/learn/qtable.hpp"

namespace strl::io {

// Text format:
//   #tau=<int>
//   #formula=<canonical formula>
//   #entries=<int>
//   <cell>,<cell>,...|<action>|<value>     (cells as row-major indices)

struct QTableHeader {
  int tau = 0;
  std::string formula;
  std::size_t entries = 0;
};

inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_qtable(std::ostream& out, const learn::QTable& q, int tau, const std::string& formula,
                         const env::GridWorld& grid) {
  out << "#tau=" << tau << "\n#formula=" << formula << "\n#entries=" << q.entry_count() << "\n";
  for (const auto& [w, a, v] : q.sorted_entries()) {
    for (std::size_t i = 0; i < w.size(); ++i) out << (i ? "," : "") << grid.index(w[i]);
    out << "|" << env::action_name(a) << "|" << format_value(v) << "\n";
  }
}

namespace detail {

inline std::string header_value(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("#" + key + "=", 0) != 0) {
    throw ConfigError("Q-table is missing the #" + key + "= header");
  }
  return line.substr(key.size() + 2);
}

}  // namespace detail

inline QTableHeader read_qtable_header(std::istream& in) {
  QTableHeader h;
  try {
    h.tau = std::stoi(detail::header_value(in, "tau"));
    h.formula = detail::header_value(in, "formula");
    h.entries = std::stoul(detail::header_value(in, "entries"));
  } catch (const std::logic_error&) {
    throw ConfigError("Q-table header has a malformed number");
  }
  return h;
}

inline learn::QTable read_qtable(std::istream& in, const env::GridWorld& grid, QTableHeader* header = nullptr) {
  const QTableHeader h = read_qtable_header(in);
  learn::QTable q;
  std::string line;
  std::size_t lineno = 3;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto bad = [&](const std::string& why) {
      return ConfigError("Q-table line " + std::to_string(lineno) + ": " + why);
    };
    const auto bar1 = line.find('|');
    const auto bar2 = line.find('|', bar1 == std::string::npos ? 0 : bar1 + 1);
    if (bar1 == std::string::npos || bar2 == std::string::npos) throw bad("expected cells|action|value");
    std::vector<env::Cell> cells;
    std::stringstream cell_text(line.substr(0, bar1));
    std::string tok;
    while (std::getline(cell_text, tok, ',')) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(tok);
      } catch (const std::logic_error&) {
        throw bad("bad cell index '" + tok + "'");
      }
      if (idx >= grid.num_cells()) throw bad("cell index out of range");
      cells.push_back(grid.cell(idx));
    }
    if (static_cast<int>(cells.size()) != h.tau) throw bad("window length differs from #tau");
    env::Action a;
    double v;
    try {
      a = env::action_from_name(line.substr(bar1 + 1, bar2 - bar1 - 1));
      v = std::stod(line.substr(bar2 + 1));
    } catch (const std::logic_error&) {
      throw bad("bad value");
    }
    q.set(env::TauState(std::move(cells)), a, v);
  }
  if (q.entry_count() != h.entries) throw ConfigError("Q-table entry count differs from #entries");
  if (header) *header = h;
  return q;
}

}  // namespace strl::io
