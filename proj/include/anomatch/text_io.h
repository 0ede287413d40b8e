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

#ifndef ANOMATCH_TEXT_IO_H_
#define ANOMATCH_TEXT_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "anomatch/matrix.h"

namespace anomatch {

// Plain-text formats shared by every file the library reads or writes. Lines
// starting with '#' are comments and blank lines are skipped.

// One row of whitespace-separated numbers per line. All rows must have the
// same number of columns.
Matrix ReadMatrix(const std::filesystem::path& path);
void WriteMatrix(const std::filesystem::path& path, const Matrix& m,
                 std::string_view header_comment = {});

// One number per line.
std::vector<double> ReadColumn(const std::filesystem::path& path);
void WriteColumn(const std::filesystem::path& path,
                 const std::vector<double>& values,
                 std::string_view header_comment = {});

// Shortest decimal text that parses back to exactly `v`.
std::string FormatDouble(double v);

// Strict parsers: the whole token must be consumed.
double ParseDouble(std::string_view token);
long long ParseInteger(std::string_view token);

// Splits on spaces, tabs, and commas.
std::vector<std::string_view> SplitFields(std::string_view line);

// Reads all non-comment, non-blank lines. `line_numbers` receives the
// 1-based source line of each kept line.
std::vector<std::string> ReadDataLines(const std::filesystem::path& path,
                                       std::vector<std::size_t>* line_numbers);

// Writes `comment` as '#'-prefixed lines (multi-line allowed).
void WriteCommentBlock(std::ostream& out, std::string_view comment);

std::string ReadFileBytes(const std::filesystem::path& path);

}  // namespace anomatch

#endif  // ANOMATCH_TEXT_IO_H_
