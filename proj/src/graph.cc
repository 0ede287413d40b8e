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

#include "anomatch/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "anomatch/errors.h"
#include "anomatch/text_io.h"

namespace anomatch {

Graph Graph::FromEdges(std::span<const Edge> edges, Matrix features) {
  const std::size_t n = features.rows();
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw MalformedInputError(
          "edge (" + std::to_string(u) + ", " + std::to_string(v) +
          ") references a node >= feature row count " + std::to_string(n));
    }
    if (u == v) continue;
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()),
                 directed.end());

  Graph g;
  g.features_ = std::move(features);
  g.row_offsets_.assign(n + 1, 0);
  g.col_indices_.reserve(directed.size());
  for (const auto& [u, v] : directed) {
    ++g.row_offsets_[u + 1];
    g.col_indices_.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.row_offsets_[i + 1] += g.row_offsets_[i];
  }
  return g;
}

bool Graph::HasEdge(std::size_t i, std::size_t j) const {
  auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), static_cast<NodeId>(j));
}

std::vector<Edge> Graph::UndirectedEdges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t i = 0; i < num_nodes(); ++i) {
    for (NodeId j : neighbors(i)) {
      if (i < j) out.emplace_back(static_cast<NodeId>(i), j);
    }
  }
  return out;
}

Graph Graph::WithFeatures(Matrix features) const {
  if (features.rows() != num_nodes()) {
    throw ShapeError("replacement feature matrix has " +
                     std::to_string(features.rows()) + " rows, graph has " +
                     std::to_string(num_nodes()) + " nodes");
  }
  Graph g = *this;
  g.features_ = std::move(features);
  return g;
}

Graph Graph::WithAddedEdges(std::span<const Edge> extra) const {
  std::vector<Edge> all = UndirectedEdges();
  all.insert(all.end(), extra.begin(), extra.end());
  return FromEdges(all, features_);
}

std::vector<std::size_t> Degrees(const Graph& g) {
  std::vector<std::size_t> deg(g.num_nodes());
  for (std::size_t i = 0; i < g.num_nodes(); ++i) deg[i] = g.degree(i);
  return deg;
}

void NormalizeRowsL1(Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    double norm = 0.0;
    for (double v : row) norm += std::abs(v);
    if (norm == 0.0) continue;
    for (double& v : row) v /= norm;
  }
}

std::vector<Edge> ReadEdgeList(const std::filesystem::path& path) {
  std::vector<std::size_t> linenos;
  auto lines = ReadDataLines(path, &linenos);
  std::vector<Edge> edges;
  edges.reserve(lines.size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    auto fields = SplitFields(lines[r]);
    const std::string where = path.string() + ":" + std::to_string(linenos[r]);
    if (fields.size() != 2) {
      throw MalformedInputError(where + ": expected two node ids");
    }
    NodeId ids[2];
    for (int k = 0; k < 2; ++k) {
      long long v = 0;
      try {
        v = ParseInteger(fields[k]);
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
      if (v < 0 || v > std::numeric_limits<NodeId>::max()) {
        throw MalformedInputError(where + ": node id out of range");
      }
      ids[k] = static_cast<NodeId>(v);
    }
    edges.emplace_back(ids[0], ids[1]);
  }
  return edges;
}

void WriteEdgeList(const std::filesystem::path& path,
                   std::span<const Edge> edges,
                   std::string_view header_comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteCommentBlock(out, header_comment);
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

Graph LoadGraph(const std::filesystem::path& edge_list_path,
                const std::filesystem::path& features_path,
                const GraphLoadOptions& options) {
  Matrix features = ReadMatrix(features_path);
  if (options.normalize_features) NormalizeRowsL1(features);
  auto edges = ReadEdgeList(edge_list_path);
  return Graph::FromEdges(edges, std::move(features));
}

void SaveGraph(const Graph& g, const std::filesystem::path& edge_list_path,
               const std::filesystem::path& features_path,
               std::string_view header_comment) {
  WriteEdgeList(edge_list_path, g.UndirectedEdges(), header_comment);
  WriteMatrix(features_path, g.features(), header_comment);
}

LabelVector ReadLabels(const std::filesystem::path& path) {
  std::vector<std::size_t> linenos;
  auto lines = ReadDataLines(path, &linenos);
  LabelVector labels;
  labels.reserve(lines.size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    auto fields = SplitFields(lines[r]);
    const std::string where = path.string() + ":" + std::to_string(linenos[r]);
    if (fields.size() != 1) {
      throw MalformedInputError(where + ": expected one label per line");
    }
    long long v = 0;
    try {
      v = ParseInteger(fields[0]);
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (v != 0 && v != 1) {
      throw MalformedInputError(where + ": label must be 0 or 1");
    }
    labels.push_back(static_cast<std::uint8_t>(v));
  }
  return labels;
}

void WriteLabels(const std::filesystem::path& path, const LabelVector& labels,
                 std::string_view header_comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  WriteCommentBlock(out, header_comment);
  for (auto l : labels) out << static_cast<int>(l) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace anomatch
