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

#ifndef ANOMATCH_GRAPH_H_
#define ANOMATCH_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "anomatch/matrix.h"

namespace anomatch {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// 0 = normal, 1 = anomaly; one entry per node.
using LabelVector = std::vector<std::uint8_t>;

// Undirected attributed graph. Adjacency is stored as symmetric CSR with
// sorted neighbor lists, no self-loops and no duplicates; every undirected
// edge appears twice. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Builds from an arbitrary edge list: self-loops and duplicates are
  // dropped and reverse edges added. Throws MalformedInputError when an
  // endpoint is >= features.rows().
  static Graph FromEdges(std::span<const Edge> edges, Matrix features);

  std::size_t num_nodes() const { return features_.rows(); }
  // Undirected edge count m (half the stored entries).
  std::size_t num_edges() const { return col_indices_.size() / 2; }
  std::size_t feature_dim() const { return features_.cols(); }

  std::span<const NodeId> neighbors(std::size_t i) const {
    return {col_indices_.data() + row_offsets_[i],
            row_offsets_[i + 1] - row_offsets_[i]};
  }
  std::size_t degree(std::size_t i) const {
    return row_offsets_[i + 1] - row_offsets_[i];
  }
  bool HasEdge(std::size_t i, std::size_t j) const;

  const Matrix& features() const { return features_; }
  std::span<const std::size_t> row_offsets() const { return row_offsets_; }
  std::span<const NodeId> col_indices() const { return col_indices_; }

  // Each undirected edge once, as (i, j) with i < j, in CSR order.
  std::vector<Edge> UndirectedEdges() const;

  // Same topology, replaced features (row count must match).
  Graph WithFeatures(Matrix features) const;
  // Same features, union of the current edges and `extra`.
  Graph WithAddedEdges(std::span<const Edge> extra) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> row_offsets_{0};
  std::vector<NodeId> col_indices_;
  Matrix features_;
};

// Number of neighbors of every node in A (without the virtual self-loop).
std::vector<std::size_t> Degrees(const Graph& g);

struct GraphLoadOptions {
  // Divide each feature row by its L1 norm (rows with zero norm are kept).
  bool normalize_features = false;
};

// Edge list: two zero-based ids per line. Features: one row per node.
Graph LoadGraph(const std::filesystem::path& edge_list_path,
                const std::filesystem::path& features_path,
                const GraphLoadOptions& options = {});
void SaveGraph(const Graph& g, const std::filesystem::path& edge_list_path,
               const std::filesystem::path& features_path,
               std::string_view header_comment = {});

std::vector<Edge> ReadEdgeList(const std::filesystem::path& path);
void WriteEdgeList(const std::filesystem::path& path,
                   std::span<const Edge> edges,
                   std::string_view header_comment = {});

// One 0/1 per line. Throws MalformedInputError on any other value.
LabelVector ReadLabels(const std::filesystem::path& path);
void WriteLabels(const std::filesystem::path& path, const LabelVector& labels,
                 std::string_view header_comment = {});

void NormalizeRowsL1(Matrix& m);

}  // namespace anomatch

#endif  // ANOMATCH_GRAPH_H_
