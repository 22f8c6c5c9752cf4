// Copyright 2026 The linepatrol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The day graph of round t is a layered DAG: source -> column 1 -> ... ->
// column K -> sink, with P_t rows per column (one per interval). A
// source-sink path visits rows y_1 <= ... <= y_K, i.e. a sorted placement of
// the K patrols into intervals. Each edge carries the set of targets left
// unprotected by the two consecutive patrols it joins, so the number of
// path edges uncovering a target is 1 exactly when the placement misses it.

#ifndef LINEPATROL_DAY_GRAPH_H_
#define LINEPATROL_DAY_GRAPH_H_

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "linepatrol/core_model.h"
#include "linepatrol/error.h"
#include "linepatrol/partition.h"
#include "linepatrol/rational.h"

namespace linepatrol {

struct VertexId {
  enum class Kind { kSource, kSink, kGrid };
  Kind kind = Kind::kGrid;
  int column = 0;  // 1..K for grid vertices
  int row = 0;     // 1..P_t for grid vertices

  static VertexId Source() { return {Kind::kSource, 0, 0}; }
  static VertexId Sink() { return {Kind::kSink, 0, 0}; }
  static VertexId Grid(int column, int row) { return {Kind::kGrid, column, row}; }

  friend bool operator==(const VertexId&, const VertexId&) = default;
};

struct Edge {
  VertexId from;
  VertexId to;
  // Target indices a with cover flag c(e, a) = 1, ascending.
  std::vector<int> uncovered;
};

struct DayGraph {
  int t = 0;
  int rows = 0;
  int columns = 0;
  std::vector<Edge> edges;
  // w_a(t) for every target a.
  std::vector<Rational> weights;
  std::vector<std::vector<int>> out_edges;
  std::vector<std::vector<int>> in_edges;

  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_vertices() const { return 2 + rows * columns; }
  // 0 = source, 1 = sink, then grid vertices column-major.
  int VertexIndex(const VertexId& v) const;

  int SourceEdge(int row) const { return row - 1; }
  int SinkEdge(int row) const {
    return rows + (columns - 1) * rows * (rows + 1) / 2 + row - 1;
  }
  // Edge v(column, row) -> v(column + 1, next_row), row <= next_row.
  int GridEdge(int column, int row, int next_row) const {
    const int per_column = rows * (rows + 1) / 2;
    const int before_row = (row - 1) * rows - (row - 1) * (row - 2) / 2;
    return rows + (column - 1) * per_column + before_row + (next_row - row);
  }
};

// 2 P + (K - 1) P (P + 1) / 2.
int ExpectedEdgeCount(int rows, int columns);

// c(below, above, a): 1 iff target a lies strictly between the two intervals
// (or beyond the border when one side is null) and neither interval can
// protect it.
int CoverFlag(const ProblemInstance& instance, const Interval* below,
              const Interval* above, int target, int t);

DayGraph BuildDayGraph(const ProblemInstance& instance,
                       const PartitionSet& partitions, int t);

using CanonicalPath = std::vector<int>;  // K + 1 edge ids, source to sink

// Rows y_1 <= ... <= y_K of a snapshot mapped to its canonical path. Throws
// kUnsortedSnapshot.
CanonicalPath SnapshotToPath(const DayGraph& graph,
                             const std::vector<int>& snapshot);

// The grid rows visited by a canonical path.
std::vector<int> PathRows(const DayGraph& graph, const CanonicalPath& path);

// w_a(t) * sum over path edges of c(e, a).
Rational PathPayoff(const DayGraph& graph, const CanonicalPath& path,
                    int target);

// Edge flows of a canonical flow, indexed by edge id.
template <typename Scalar>
using EdgeFlow = Vector<Scalar>;

// max_a sum_e f(e) c(e, a) w_a(t).
template <typename Scalar>
Scalar FlowCost(const DayGraph& graph, const EdgeFlow<Scalar>& flow) {
  std::vector<Scalar> per_target(graph.weights.size(), Scalar(0));
  for (int e = 0; e < graph.num_edges(); ++e) {
    if (flow[e] == Scalar(0)) continue;
    for (int a : graph.edges[e].uncovered) per_target[a] += flow[e];
  }
  Scalar best(0);
  for (size_t a = 0; a < per_target.size(); ++a) {
    Scalar cost = per_target[a] * ScalarTraits<Scalar>::FromRational(
                                      graph.weights[a]);
    if (cost > best) best = cost;
  }
  return best;
}

// Per-target cost sum_e f(e) c(e, a) w_a(t).
template <typename Scalar>
std::vector<Scalar> TargetCosts(const DayGraph& graph,
                                const EdgeFlow<Scalar>& flow) {
  std::vector<Scalar> per_target(graph.weights.size(), Scalar(0));
  for (int e = 0; e < graph.num_edges(); ++e) {
    if (flow[e] == Scalar(0)) continue;
    for (int a : graph.edges[e].uncovered) per_target[a] += flow[e];
  }
  for (size_t a = 0; a < per_target.size(); ++a) {
    per_target[a] *= ScalarTraits<Scalar>::FromRational(graph.weights[a]);
  }
  return per_target;
}

template <typename Scalar>
struct WeightedSnapshot {
  std::vector<int> rows;
  Scalar probability;
};

// Superposes the canonical paths of a mixed snapshot. Throws
// kProbabilitySumMismatch unless the probabilities sum to 1 (within 1e-9 for
// floating point).
template <typename Scalar>
EdgeFlow<Scalar> MixedToFlow(const DayGraph& graph,
                             const std::vector<WeightedSnapshot<Scalar>>& mix) {
  Scalar total(0);
  EdgeFlow<Scalar> flow = EdgeFlow<Scalar>::Zero(graph.num_edges());
  for (const auto& entry : mix) {
    total += entry.probability;
    for (int e : SnapshotToPath(graph, entry.rows)) flow[e] += entry.probability;
  }
  if (!ScalarTraits<Scalar>::IsZero(total - Scalar(1), 1e-9)) {
    throw Error(ErrorCode::kProbabilitySumMismatch,
                "snapshot probabilities sum to " +
                    std::to_string(ToDouble(total)));
  }
  return flow;
}

// Flow through grid vertex v(column, row).
template <typename Scalar>
Scalar ThroughFlow(const DayGraph& graph, const EdgeFlow<Scalar>& flow,
                   int column, int row) {
  Scalar sum(0);
  for (int e : graph.out_edges[graph.VertexIndex(VertexId::Grid(column, row))]) {
    sum += flow[e];
  }
  return sum;
}

}  // namespace linepatrol

#endif  // LINEPATROL_DAY_GRAPH_H_
