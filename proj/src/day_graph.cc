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

#include "linepatrol/day_graph.h"

namespace linepatrol {

int DayGraph::VertexIndex(const VertexId& v) const {
  switch (v.kind) {
    case VertexId::Kind::kSource: return 0;
    case VertexId::Kind::kSink: return 1;
    case VertexId::Kind::kGrid: break;
  }
  return 2 + (v.column - 1) * rows + (v.row - 1);
}

int ExpectedEdgeCount(int rows, int columns) {
  return 2 * rows + (columns - 1) * rows * (rows + 1) / 2;
}

int CoverFlag(const ProblemInstance& instance, const Interval* below,
              const Interval* above, int target, int t) {
  const Rational& x = instance.position(target, t);
  const Rational& r = instance.radius;
  // Betweenness is judged against the integers each interval holds, so a
  // target sitting in an integer-free gap is still placed on one side.
  if (below != nullptr && !(x > Rational(static_cast<long>(below->hi)))) {
    return 0;
  }
  if (above != nullptr && !(x < Rational(static_cast<long>(above->lo)))) {
    return 0;
  }
  if (below != nullptr && ProtectedByInterval(*below, x, r)) return 0;
  if (above != nullptr && ProtectedByInterval(*above, x, r)) return 0;
  return 1;
}

DayGraph BuildDayGraph(const ProblemInstance& instance,
                       const PartitionSet& partitions, int t) {
  const TimePartition& part = partitions.round(t);
  DayGraph g;
  g.t = t;
  g.rows = part.size();
  g.columns = instance.effective_patrols;
  const int n = instance.num_targets();
  g.weights.reserve(n);
  for (int a = 0; a < n; ++a) g.weights.push_back(instance.weight(a, t));

  auto uncovered = [&](const Interval* below, const Interval* above) {
    std::vector<int> out;
    for (int a = 0; a < n; ++a) {
      if (CoverFlag(instance, below, above, a, t) == 1) out.push_back(a);
    }
    return out;
  };

  const int p = g.rows;
  g.edges.reserve(ExpectedEdgeCount(p, g.columns));
  for (int y = 1; y <= p; ++y) {
    g.edges.push_back({VertexId::Source(), VertexId::Grid(1, y),
                       uncovered(nullptr, &part.interval(y))});
  }
  if (g.columns > 1) {
    std::vector<std::vector<int>> pair_sets;
    pair_sets.reserve(static_cast<size_t>(p) * (p + 1) / 2);
    for (int y = 1; y <= p; ++y) {
      for (int y2 = y; y2 <= p; ++y2) {
        pair_sets.push_back(uncovered(&part.interval(y), &part.interval(y2)));
      }
    }
    for (int x = 1; x < g.columns; ++x) {
      size_t k = 0;
      for (int y = 1; y <= p; ++y) {
        for (int y2 = y; y2 <= p; ++y2) {
          g.edges.push_back(
              {VertexId::Grid(x, y), VertexId::Grid(x + 1, y2), pair_sets[k++]});
        }
      }
    }
  }
  for (int y = 1; y <= p; ++y) {
    g.edges.push_back({VertexId::Grid(g.columns, y), VertexId::Sink(),
                       uncovered(&part.interval(y), nullptr)});
  }

  g.out_edges.assign(g.num_vertices(), {});
  g.in_edges.assign(g.num_vertices(), {});
  for (int e = 0; e < g.num_edges(); ++e) {
    g.out_edges[g.VertexIndex(g.edges[e].from)].push_back(e);
    g.in_edges[g.VertexIndex(g.edges[e].to)].push_back(e);
  }
  return g;
}

CanonicalPath SnapshotToPath(const DayGraph& graph,
                             const std::vector<int>& snapshot) {
  if (static_cast<int>(snapshot.size()) != graph.columns) {
    throw Error(ErrorCode::kInvalidArgument,
                "snapshot has " + std::to_string(snapshot.size()) +
                    " patrols, graph has " + std::to_string(graph.columns) +
                    " columns");
  }
  for (size_t k = 0; k < snapshot.size(); ++k) {
    if (snapshot[k] < 1 || snapshot[k] > graph.rows) {
      throw Error(ErrorCode::kInvalidArgument,
                  "snapshot row " + std::to_string(snapshot[k]) +
                      " out of range");
    }
    if (k > 0 && snapshot[k] < snapshot[k - 1]) {
      throw Error(ErrorCode::kUnsortedSnapshot,
                  "snapshot rows must be non-decreasing");
    }
  }
  CanonicalPath path;
  path.reserve(snapshot.size() + 1);
  path.push_back(graph.SourceEdge(snapshot.front()));
  for (size_t k = 0; k + 1 < snapshot.size(); ++k) {
    path.push_back(graph.GridEdge(static_cast<int>(k) + 1, snapshot[k],
                                  snapshot[k + 1]));
  }
  path.push_back(graph.SinkEdge(snapshot.back()));
  return path;
}

std::vector<int> PathRows(const DayGraph& graph, const CanonicalPath& path) {
  std::vector<int> rows;
  rows.reserve(graph.columns);
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    rows.push_back(graph.edges[path[i]].to.row);
  }
  return rows;
}

Rational PathPayoff(const DayGraph& graph, const CanonicalPath& path,
                    int target) {
  int count = 0;
  for (int e : path) {
    const auto& u = graph.edges[e].uncovered;
    if (std::binary_search(u.begin(), u.end(), target)) ++count;
  }
  return graph.weights[target] * count;
}

}  // namespace linepatrol
