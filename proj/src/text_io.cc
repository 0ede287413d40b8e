// Copyright 2026 The anomatch Authors
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

#include "anomatch/text_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "anomatch/errors.h"

namespace anomatch {

double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("MaxAbsDiff: shape mismatch");
  }
  double worst = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    worst = std::max(worst, std::abs(av[i] - bv[i]));
  }
  return worst;
}

std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("not a number: '" + std::string(token) + "'");
  }
  return value;
}

long long ParseInteger(std::string_view token) {
  long long value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() ||
      token.empty()) {
    throw ParseError("not an integer: '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_sep = [](char c) {
    return c == ' ' || c == '\t' || c == ',' || c == '\r';
  };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::vector<std::string> ReadDataLines(const std::filesystem::path& path,
                                       std::vector<std::size_t>* line_numbers) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(std::move(line));
    if (line_numbers) line_numbers->push_back(lineno);
  }
  return lines;
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteCommentBlock(std::ostream& out, std::string_view comment) {
  while (!comment.empty()) {
    auto nl = comment.find('\n');
    out << "# " << comment.substr(0, nl) << '\n';
    if (nl == std::string_view::npos) break;
    comment.remove_prefix(nl + 1);
  }
}

Matrix ReadMatrix(const std::filesystem::path& path) {
  std::vector<std::size_t> linenos;
  auto lines = ReadDataLines(path, &linenos);
  std::size_t cols = 0;
  std::vector<double> data;
  for (std::size_t r = 0; r < lines.size(); ++r) {
    auto fields = SplitFields(lines[r]);
    if (r == 0) {
      cols = fields.size();
      data.reserve(lines.size() * cols);
    } else if (fields.size() != cols) {
      throw MalformedInputError(path.string() + ":" +
                                std::to_string(linenos[r]) + ": expected " +
                                std::to_string(cols) + " columns, found " +
                                std::to_string(fields.size()));
    }
    for (auto f : fields) {
      try {
        data.push_back(ParseDouble(f));
      } catch (const ParseError& e) {
        throw ParseError(path.string() + ":" + std::to_string(linenos[r]) +
                         ": " + e.what());
      }
    }
  }
  return Matrix(lines.size(), cols, std::move(data));
}

void WriteMatrix(const std::filesystem::path& path, const Matrix& m,
                 std::string_view header_comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteCommentBlock(out, header_comment);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ' ';
      out << FormatDouble(row[c]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<double> ReadColumn(const std::filesystem::path& path) {
  std::vector<std::size_t> linenos;
  auto lines = ReadDataLines(path, &linenos);
  std::vector<double> values;
  values.reserve(lines.size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    auto fields = SplitFields(lines[r]);
    if (fields.size() != 1) {
      throw MalformedInputError(path.string() + ":" +
                                std::to_string(linenos[r]) +
                                ": expected one value per line");
    }
    try {
      values.push_back(ParseDouble(fields[0]));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ":" + std::to_string(linenos[r]) + ": " +
                       e.what());
    }
  }
  return values;
}

void WriteColumn(const std::filesystem::path& path,
                 const std::vector<double>& values,
                 std::string_view header_comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteCommentBlock(out, header_comment);
  for (double v : values) out << FormatDouble(v) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace anomatch
