#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "splr/core.hpp"
#include "splr/data.hpp"

namespace splr {

enum class Format { csv, tsv, dense_text };

/// Pick a format from the file extension: .csv and .tsv mean what they say,
/// anything else is whitespace-separated dense text.
inline Format format_from_path(const std::string& path) {
  auto ends_with = [&](const char* suffix) {
    const std::string s(suffix);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".csv")) return Format::csv;
  if (ends_with(".tsv")) return Format::tsv;
  return Format::dense_text;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

inline bool parse_double(const std::string& token, double& out) {
  if (token.empty()) return false;
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  return end == begin + token.size() && errno != ERANGE;
}

inline std::vector<std::string> split_line(const std::string& line, Format format) {
  std::vector<std::string> cells;
  if (format == Format::dense_text) {
    std::string cur;
    for (char c : line) {
      if (c == ' ' || c == '\t') {
        if (!cur.empty()) cells.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) cells.push_back(cur);
    return cells;
  }
  const char sep = format == Format::csv ? ',' : '\t';
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

struct NumberedLine {
  int number = 0;  // 1-based position in the file
  std::string text;
};

/// Non-blank lines with their original file line numbers, so error messages
/// can point at the real location.
inline std::vector<NumberedLine> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("failed to open " + path);
  std::vector<NumberedLine> lines;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) lines.push_back({number, line});
  }
  return lines;
}

}  // namespace detail

/// Parse a numeric table. An optional header row is recognized by its first
/// line containing anything non-numeric. Any shape with at least one row is
/// accepted; use load_matrix for data that must satisfy DataMatrix rules.
inline Matrix read_matrix(const std::string& path, Format format) {
  const auto lines = detail::read_lines(path);
  if (lines.empty()) throw parse_error(path + ": no rows");

  std::size_t first = 0;
  {
    double ignored;
    for (const auto& cell : detail::split_line(lines[0].text, format)) {
      if (!detail::parse_double(cell, ignored)) {
        first = 1;  // header row
        break;
      }
    }
  }
  if (first >= lines.size()) throw parse_error(path + ": no rows");

  const auto width = detail::split_line(lines[first].text, format).size();
  Matrix values(static_cast<Index>(lines.size() - first), static_cast<Index>(width));
  for (std::size_t r = first; r < lines.size(); ++r) {
    const auto cells = detail::split_line(lines[r].text, format);
    if (cells.size() != width)
      throw parse_error(path + ": ragged row at line " + std::to_string(lines[r].number));
    for (std::size_t c = 0; c < width; ++c) {
      double value;
      if (!detail::parse_double(cells[c], value))
        throw parse_error(path + ": non-numeric cell at line " + std::to_string(lines[r].number) +
                          ", column " + std::to_string(c + 1));
      values(static_cast<Index>(r - first), static_cast<Index>(c)) = value;
    }
  }
  return values;
}

inline DataMatrix load_matrix(const std::string& path, Format format) {
  try {
    return DataMatrix(read_matrix(path, format));
  } catch (const std::invalid_argument& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline DataMatrix load_matrix(const std::string& path) {
  return load_matrix(path, format_from_path(path));
}

/// One label token per line. Tokens can be arbitrary strings; they are
/// remapped to dense ids in first appearance order.
inline LabelVector load_labels(const std::string& path) {
  const auto lines = detail::read_lines(path);
  if (lines.empty()) throw parse_error(path + ": no rows");
  std::vector<std::string> tokens;
  tokens.reserve(lines.size());
  for (const auto& line : lines) tokens.push_back(detail::trim(line.text));
  return LabelVector(tokens);
}

/// Write with enough digits that reading the file back reproduces every
/// value bit for bit.
inline void write_matrix(const std::string& path, const Matrix& values, Format format,
                         const std::vector<std::string>& header = {}) {
  std::ofstream out(path);
  if (!out) throw io_error("failed to open " + path + " for writing");
  const char sep = format == Format::csv ? ',' : format == Format::tsv ? '\t' : ' ';
  if (!header.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i)
      out << (i ? std::string(1, sep) : "") << header[i];
    out << '\n';
  }
  char buffer[64];
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) {
      std::snprintf(buffer, sizeof buffer, "%.17g", values(r, c));
      out << (c ? std::string(1, sep) : "") << buffer;
    }
    out << '\n';
  }
  if (!out) throw io_error("failed while writing " + path);
}

}  // namespace splr
