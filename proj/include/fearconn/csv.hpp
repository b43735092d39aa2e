#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fearconn/errors.hpp"

namespace fearconn::csv {

/// Parsed delimited file: header row + string cells. Lines starting with '#'
/// are treated as comments and skipped.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return int(i);
    return -1;
  }
  int require_column(const std::string& name) const {
    int c = column(name);
    if (c < 0) throw SchemaError("missing required column '" + name + "'");
    return c;
  }
};

inline std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delim)) {
    // trim surrounding whitespace and CR
    size_t a = cell.find_first_not_of(" \t\r");
    size_t b = cell.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
  }
  if (!line.empty() && line.back() == delim) out.push_back("");
  return out;
}

inline Table read_file(const std::string& path, char delim = ',') {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_line(line, delim);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
    } else {
      cells.resize(t.header.size());
      t.rows.push_back(std::move(cells));
    }
  }
  if (!have_header) throw EmptyInputError("no header row in " + path);
  return t;
}

class Writer {
public:
  explicit Writer(const std::string& path) : out_(path) {
    if (!out_) throw Error("cannot open file for writing: " + path);
  }

  void comment(const std::string& text) { out_ << "# " << text << "\n"; }

  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ofstream& stream() { return out_; }

private:
  std::ofstream out_;
};

inline std::string format_double(double v, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace fearconn::csv
