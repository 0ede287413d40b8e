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

#include "anomatch/checkpoint.h"

#include <fstream>
#include <sstream>

#include "anomatch/errors.h"
#include "anomatch/text_io.h"

namespace anomatch {
namespace {

constexpr std::string_view kMagic = "anomatch-checkpoint";
constexpr int kVersion = 1;

void WriteRow(std::ostream& out, std::span<const double> row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j) out << ' ';
    out << FormatDouble(row[j]);
  }
  out << '\n';
}

class LineReader {
 public:
  LineReader(std::istream& in, std::string name)
      : in_(in), name_(std::move(name)) {}

  std::string Next() {
    std::string line;
    if (!std::getline(in_, line)) Fail("unexpected end of file");
    ++lineno_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw MalformedInputError(name_ + ":" + std::to_string(lineno_) + ": " +
                              what);
  }

  // Reads "<key> <ints...>" and returns the integers.
  std::vector<std::size_t> Header(std::string_view key, std::size_t count) {
    std::string line = Next();
    auto fields = SplitFields(line);
    if (fields.size() != count + 1 || fields[0] != key) {
      Fail("expected '" + std::string(key) + "' header");
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      long long v = ParseInteger(fields[i]);
      if (v < 0) Fail("negative dimension");
      out.push_back(static_cast<std::size_t>(v));
    }
    return out;
  }

  void Row(std::span<double> dst) {
    std::string line = Next();
    auto fields = SplitFields(line);
    if (fields.size() != dst.size()) Fail("wrong number of values in row");
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] = ParseDouble(fields[j]);
  }

 private:
  std::istream& in_;
  std::string name_;
  std::size_t lineno_ = 0;
};

}  // namespace

void SaveCheckpoint(const std::filesystem::path& path,
                    const Checkpoint& ckpt) {
  const auto& p = ckpt.params;
  p.Validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const std::size_t d = p.input_dim();
  const std::size_t h = p.hidden_dim();
  out << kMagic << ' ' << kVersion << '\n';
  out << "input_dim " << d << '\n';
  out << "hidden_dim " << h << '\n';
  std::string config = ckpt.config_json;
  for (char& c : config) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  out << "config " << (config.empty() ? "{}" : config) << '\n';
  out << "w1 " << d << ' ' << h << '\n';
  for (std::size_t k = 0; k < d; ++k) WriteRow(out, p.w1.row(k));
  out << "b1 " << h << '\n';
  WriteRow(out, p.b1);
  out << "w2 " << d << ' ' << h << '\n';
  for (std::size_t k = 0; k < d; ++k) WriteRow(out, p.w2.row(k));
  out << "b2 " << h << '\n';
  WriteRow(out, p.b2);
  if (!out) throw IoError("write failed: " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  LineReader reader(in, path.string());
  try {
    auto magic = reader.Header(kMagic, 1);
    if (magic[0] != kVersion) reader.Fail("unsupported checkpoint version");
    const std::size_t d = reader.Header("input_dim", 1)[0];
    const std::size_t h = reader.Header("hidden_dim", 1)[0];
    Checkpoint ckpt;
    std::string config = reader.Next();
    if (config.rfind("config ", 0) != 0) reader.Fail("expected 'config'");
    ckpt.config_json = config.substr(7);
    ckpt.params = ModelParameters::Zeros(d, h);
    auto& p = ckpt.params;
    auto matrix = [&](std::string_view key, Matrix& m) {
      auto dims = reader.Header(key, 2);
      if (dims[0] != d || dims[1] != h) reader.Fail("tensor shape mismatch");
      for (std::size_t k = 0; k < d; ++k) reader.Row(m.row(k));
    };
    auto vector = [&](std::string_view key, std::vector<double>& v) {
      auto dims = reader.Header(key, 1);
      if (dims[0] != h) reader.Fail("tensor shape mismatch");
      reader.Row(v);
    };
    matrix("w1", p.w1);
    vector("b1", p.b1);
    matrix("w2", p.w2);
    vector("b2", p.b2);
    return ckpt;
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace anomatch
