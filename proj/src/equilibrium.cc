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

#include "linepatrol/equilibrium.h"

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>

#include "linepatrol/error.h"

namespace linepatrol {

std::vector<DayGraph> BuildDayGraphs(const ProblemInstance& instance,
                                     const PartitionSet& partitions) {
  std::vector<DayGraph> graphs;
  graphs.reserve(instance.horizon);
  for (int t = 1; t <= instance.horizon; ++t) {
    graphs.push_back(BuildDayGraph(instance, partitions, t));
  }
  return graphs;
}

namespace {

std::string FlowName(int t, int e) {
  return "f" + std::to_string(t) + "_" + std::to_string(e);
}

// sum_e f(e) c(e, a) w_a(t) - u <= 0.
std::vector<LinearTerm> CostTerms(const DayGraph& g, int offset, int target,
                                  int u) {
  std::vector<LinearTerm> terms;
  const Rational& w = g.weights[target];
  if (sgn(w) != 0) {
    for (int e = 0; e < g.num_edges(); ++e) {
      const auto& unc = g.edges[e].uncovered;
      if (std::binary_search(unc.begin(), unc.end(), target)) {
        terms.push_back({offset + e, w});
      }
    }
  }
  terms.push_back({u, -1});
  return terms;
}

template <typename Scalar>
std::vector<EdgeFlow<Scalar>> ExtractFlows(const std::vector<DayGraph>& graphs,
                                           const std::vector<int>& offset,
                                           const std::vector<Scalar>& values,
                                           double tol) {
  std::vector<EdgeFlow<Scalar>> flows;
  flows.reserve(graphs.size());
  for (size_t t = 0; t < graphs.size(); ++t) {
    EdgeFlow<Scalar> f(graphs[t].num_edges());
    for (int e = 0; e < graphs[t].num_edges(); ++e) {
      f[e] = values[offset[t] + e];
      if constexpr (!ScalarTraits<Scalar>::kExact) {
        if (f[e] < tol) f[e] = 0;
      }
    }
    flows.push_back(std::move(f));
  }
  return flows;
}

double TolFor(const LPOptions& options) {
  return options.tolerance;
}

}  // namespace

AssembledLp AssembleLp(const ProblemInstance& instance,
                       const PartitionSet& partitions,
                       const std::vector<DayGraph>& graphs) {
  AssembledLp lp;
  LPModel& model = lp.model;
  const int horizon = instance.horizon;
  for (int t = 1; t <= horizon; ++t) {
    const DayGraph& g = graphs[t - 1];
    lp.edge_offset.push_back(model.num_variables());
    for (int e = 0; e < g.num_edges(); ++e) model.AddVariable(FlowName(t, e));
  }
  lp.u = model.AddVariable("u");

  for (int t = 1; t <= horizon; ++t) {
    const DayGraph& g = graphs[t - 1];
    const int off = lp.edge_offset[t - 1];
    for (int k = 1; k <= g.columns; ++k) {
      for (int y = 1; y <= g.rows; ++y) {
        const int v = g.VertexIndex(VertexId::Grid(k, y));
        std::vector<LinearTerm> terms;
        for (int e : g.in_edges[v]) terms.push_back({off + e, 1});
        for (int e : g.out_edges[v]) terms.push_back({off + e, -1});
        model.AddConstraint(std::move(terms), Relation::kEqual, 0,
                            "cons" + std::to_string(t) + "_" +
                                std::to_string(k) + "_" + std::to_string(y));
        ++lp.counts.conservation;
      }
    }
    std::vector<LinearTerm> src, snk;
    for (int e : g.out_edges[g.VertexIndex(VertexId::Source())]) {
      src.push_back({off + e, 1});
    }
    for (int e : g.in_edges[g.VertexIndex(VertexId::Sink())]) {
      snk.push_back({off + e, 1});
    }
    model.AddConstraint(std::move(src), Relation::kEqual, 1,
                        "source" + std::to_string(t));
    model.AddConstraint(std::move(snk), Relation::kEqual, 1,
                        "sink" + std::to_string(t));
    ++lp.counts.source;
    ++lp.counts.sink;
  }

  for (int t = 1; t <= horizon; ++t) {
    const DayGraph& g = graphs[t - 1];
    for (int a = 0; a < instance.num_targets(); ++a) {
      model.AddConstraint(CostTerms(g, lp.edge_offset[t - 1], a, lp.u),
                          Relation::kLessEqual, 0,
                          "cost" + std::to_string(t) + "_" + std::to_string(a));
      ++lp.counts.cost;
    }
  }

  const int64_t step = instance.max_step();
  for (int t = 1; t < horizon; ++t) {
    const DayGraph& g = graphs[t - 1];
    const DayGraph& h = graphs[t];
    const int off = lp.edge_offset[t - 1];
    const int off_next = lp.edge_offset[t];
    for (int k = 1; k <= g.columns; ++k) {
      for (int i = 1; i <= g.rows; ++i) {
        for (int j = i; j <= g.rows; ++j) {
          const auto [first, last] = FeasibleSet(partitions, step, t, i, j);
          std::vector<LinearTerm> terms;
          for (int y = i; y <= j; ++y) {
            for (int e : g.out_edges[g.VertexIndex(VertexId::Grid(k, y))]) {
              terms.push_back({off + e, 1});
            }
          }
          for (int y = first; y <= last; ++y) {
            for (int e : h.out_edges[h.VertexIndex(VertexId::Grid(k, y))]) {
              terms.push_back({off_next + e, -1});
            }
          }
          model.AddConstraint(std::move(terms), Relation::kLessEqual, 0,
                              "compat" + std::to_string(t) + "_" +
                                  std::to_string(k) + "_" + std::to_string(i) +
                                  "_" + std::to_string(j));
          ++lp.counts.compatibility;
        }
      }
    }
  }
  model.SetObjective({{lp.u, 1}});
  lp.counts.variables = model.num_variables();
  return lp;
}

template <typename Scalar>
LpFlows<Scalar> SolveLp(const AssembledLp& lp,
                        const std::vector<DayGraph>& graphs,
                        const LPOptions& options) {
  const LPSolution<Scalar> sol = Minimize<Scalar>(lp.model, options);
  LpFlows<Scalar> out;
  out.value = sol.values[lp.u];
  out.flows = ExtractFlows(graphs, lp.edge_offset, sol.values, TolFor(options));
  out.iterations = sol.iterations;
  out.exact_iterations = sol.exact_iterations;
  out.compatibility_rows = lp.counts.compatibility;
  return out;
}

namespace {

// Reachable row ranges per round: first[t][i], last[t][i] for single rows.
struct ReachTable {
  std::vector<std::vector<int>> first;
  std::vector<std::vector<int>> last;
};

ReachTable BuildReach(const PartitionSet& partitions, int64_t step) {
  ReachTable table;
  const int horizon = partitions.horizon();
  table.first.resize(horizon);
  table.last.resize(horizon);
  for (int t = 1; t < horizon; ++t) {
    for (const auto& [f, l] : SingleFeasibleSets(partitions, step, t)) {
      table.first[t - 1].push_back(f);
      table.last[t - 1].push_back(l);
    }
  }
  return table;
}

struct Violation {
  int t, k, i, j;
  double amount;
};

// through[t - 1][k - 1][y - 1] are vertex through-flows.
template <typename Scalar>
std::vector<Violation> FindViolations(
    const ReachTable& reach,
    const std::vector<std::vector<std::vector<Scalar>>>& through,
    double tol, Scalar* worst) {
  std::vector<Violation> found;
  const int horizon = static_cast<int>(through.size());
  for (int t = 1; t < horizon; ++t) {
    const int columns = static_cast<int>(through[t - 1].size());
    for (int k = 1; k <= columns; ++k) {
      const auto& here = through[t - 1][k - 1];
      const auto& next = through[t][k - 1];
      const int p = static_cast<int>(here.size());
      std::vector<Scalar> s(p + 1, Scalar(0)), r(next.size() + 1, Scalar(0));
      for (int y = 1; y <= p; ++y) s[y] = s[y - 1] + here[y - 1];
      for (size_t y = 1; y <= next.size(); ++y) r[y] = r[y - 1] + next[y - 1];
      for (int i = 1; i <= p; ++i) {
        const int f = reach.first[t - 1][i - 1];
        for (int j = i; j <= p; ++j) {
          const int l = reach.last[t - 1][j - 1];
          Scalar v = (s[j] - s[i - 1]) - (r[l] - r[f - 1]);
          if (worst != nullptr && v > *worst) *worst = v;
          if (ScalarTraits<Scalar>::IsPositive(v, tol)) {
            found.push_back({t, k, i, j, ToDouble(v)});
          }
        }
      }
    }
  }
  return found;
}

template <typename Scalar>
std::vector<std::vector<std::vector<Scalar>>> ThroughFlows(
    const std::vector<DayGraph>& graphs,
    const std::vector<EdgeFlow<Scalar>>& flows) {
  std::vector<std::vector<std::vector<Scalar>>> through(graphs.size());
  for (size_t t = 0; t < graphs.size(); ++t) {
    const DayGraph& g = graphs[t];
    through[t].assign(g.columns, std::vector<Scalar>(g.rows, Scalar(0)));
    for (int k = 1; k <= g.columns; ++k) {
      for (int y = 1; y <= g.rows; ++y) {
        through[t][k - 1][y - 1] = ThroughFlow(g, flows[t], k, y);
      }
    }
  }
  return through;
}

// Vertex through-flow variables phi(t, k, y) and compatibility rows written
// over them.
struct CompactLp {
  LPModel model;
  std::vector<int> edge_offset;
  std::vector<std::vector<int>> phi_offset;  // [t - 1][k - 1] -> phi of row 1
  int u = -1;
  std::vector<std::vector<std::vector<char>>> present;  // [t-1][k-1][i*P+j]
};

void AddRange(CompactLp& lp, const ReachTable& reach,
              const std::vector<DayGraph>& graphs, int t, int k, int i,
              int j) {
  const int p = graphs[t - 1].rows;
  char& flag = lp.present[t - 1][k - 1][static_cast<size_t>(i - 1) * p + (j - 1)];
  if (flag) return;
  flag = 1;
  std::vector<LinearTerm> terms;
  const int base = lp.phi_offset[t - 1][k - 1];
  const int base_next = lp.phi_offset[t][k - 1];
  for (int y = i; y <= j; ++y) terms.push_back({base + y - 1, 1});
  for (int y = reach.first[t - 1][i - 1]; y <= reach.last[t - 1][j - 1]; ++y) {
    terms.push_back({base_next + y - 1, -1});
  }
  lp.model.AddConstraint(std::move(terms), Relation::kLessEqual, 0,
                         "compat" + std::to_string(t) + "_" + std::to_string(k) +
                             "_" + std::to_string(i) + "_" + std::to_string(j));
}

CompactLp BuildCompact(const ProblemInstance& instance,
                       const std::vector<DayGraph>& graphs,
                       const ReachTable& reach) {
  CompactLp lp;
  LPModel& model = lp.model;
  const int horizon = instance.horizon;
  for (int t = 1; t <= horizon; ++t) {
    lp.edge_offset.push_back(model.num_variables());
    for (int e = 0; e < graphs[t - 1].num_edges(); ++e) {
      model.AddVariable(FlowName(t, e));
    }
  }
  lp.phi_offset.resize(horizon);
  for (int t = 1; t <= horizon; ++t) {
    const DayGraph& g = graphs[t - 1];
    for (int k = 1; k <= g.columns; ++k) {
      lp.phi_offset[t - 1].push_back(model.num_variables());
      for (int y = 1; y <= g.rows; ++y) {
        model.AddVariable("phi" + std::to_string(t) + "_" + std::to_string(k) +
                          "_" + std::to_string(y));
      }
    }
  }
  lp.u = model.AddVariable("u");

  for (int t = 1; t <= horizon; ++t) {
    const DayGraph& g = graphs[t - 1];
    const int off = lp.edge_offset[t - 1];
    for (int k = 1; k <= g.columns; ++k) {
      for (int y = 1; y <= g.rows; ++y) {
        const int v = g.VertexIndex(VertexId::Grid(k, y));
        const int phi = lp.phi_offset[t - 1][k - 1] + y - 1;
        std::vector<LinearTerm> in{{phi, -1}}, out{{phi, -1}};
        for (int e : g.in_edges[v]) in.push_back({off + e, 1});
        for (int e : g.out_edges[v]) out.push_back({off + e, 1});
        model.AddConstraint(std::move(in), Relation::kEqual, 0);
        model.AddConstraint(std::move(out), Relation::kEqual, 0);
      }
    }
    std::vector<LinearTerm> src;
    for (int e : g.out_edges[g.VertexIndex(VertexId::Source())]) {
      src.push_back({off + e, 1});
    }
    model.AddConstraint(std::move(src), Relation::kEqual, 1);
    for (int a = 0; a < instance.num_targets(); ++a) {
      model.AddConstraint(CostTerms(g, off, a, lp.u), Relation::kLessEqual, 0);
    }
  }
  model.SetObjective({{lp.u, 1}});

  lp.present.resize(horizon);
  for (int t = 1; t < horizon; ++t) {
    const int p = graphs[t - 1].rows;
    lp.present[t - 1].assign(graphs[t - 1].columns,
                             std::vector<char>(static_cast<size_t>(p) * p, 0));
    for (int k = 1; k <= graphs[t - 1].columns; ++k) {
      for (int y = 1; y <= p; ++y) {
        AddRange(lp, reach, graphs, t, k, 1, y);
        AddRange(lp, reach, graphs, t, k, y, p);
      }
    }
  }
  return lp;
}

template <typename Scalar>
std::vector<std::vector<std::vector<Scalar>>> PhiValues(
    const CompactLp& lp, const std::vector<DayGraph>& graphs,
    const std::vector<Scalar>& values) {
  std::vector<std::vector<std::vector<Scalar>>> through(graphs.size());
  for (size_t t = 0; t < graphs.size(); ++t) {
    for (int k = 1; k <= graphs[t].columns; ++k) {
      const int base = lp.phi_offset[t][k - 1];
      through[t].emplace_back(values.begin() + base,
                              values.begin() + base + graphs[t].rows);
    }
  }
  return through;
}

// Solves with lazily added ranges until none is violated at `tol`.
template <typename Scalar>
LPSolution<Scalar> SeparationLoop(CompactLp& lp, const ReachTable& reach,
                                  const std::vector<DayGraph>& graphs,
                                  const LPOptions& options, double tol,
                                  int* rounds) {
  constexpr size_t kMaxAddedPerRound = 4000;
  for (;;) {
    ++*rounds;
    LPSolution<Scalar> sol = Minimize<Scalar>(lp.model, options);
    std::vector<Violation> found =
        FindViolations<Scalar>(reach, PhiValues(lp, graphs, sol.values), tol,
                               nullptr);
    if (found.empty()) return sol;
    std::stable_sort(found.begin(), found.end(),
                     [](const Violation& a, const Violation& b) {
                       return a.amount > b.amount;
                     });
    if (found.size() > kMaxAddedPerRound) found.resize(kMaxAddedPerRound);
    for (const Violation& v : found) AddRange(lp, reach, graphs, v.t, v.k, v.i, v.j);
  }
}

}  // namespace

template <typename Scalar>
LpFlows<Scalar> SolveCompactLp(const ProblemInstance& instance,
                               const PartitionSet& partitions,
                               const std::vector<DayGraph>& graphs,
                               const LPOptions& options) {
  const ReachTable reach = BuildReach(partitions, instance.max_step());
  CompactLp lp = BuildCompact(instance, graphs, reach);
  LpFlows<Scalar> out;
  // Settle the row set in floating point first; the exact pass then rarely
  // needs more than one solve.
  const LPSolution<double> approx = SeparationLoop<double>(
      lp, reach, graphs, options, options.tolerance, &out.separation_rounds);
  out.iterations += approx.iterations;
  LPSolution<Scalar> sol;
  if constexpr (ScalarTraits<Scalar>::kExact) {
    sol = SeparationLoop<Scalar>(lp, reach, graphs, options, 0,
                                 &out.separation_rounds);
  } else {
    sol = approx;
  }
  out.value = sol.values[lp.u];
  out.flows = ExtractFlows(graphs, lp.edge_offset, sol.values, options.tolerance);
  out.iterations += sol.iterations;
  out.exact_iterations = sol.exact_iterations;
  int rows = 0;
  for (const auto& per_t : lp.present) {
    for (const auto& per_k : per_t) {
      rows += static_cast<int>(std::count(per_k.begin(), per_k.end(), 1));
    }
  }
  out.compatibility_rows = rows;
  return out;
}

template <typename Scalar>
Scalar MaxCompatibilityViolation(const PartitionSet& partitions,
                                 const std::vector<DayGraph>& graphs,
                                 const std::vector<EdgeFlow<Scalar>>& flows,
                                 int64_t max_step) {
  const ReachTable reach = BuildReach(partitions, max_step);
  Scalar worst(0);
  FindViolations<Scalar>(reach, ThroughFlows(graphs, flows), 0, &worst);
  return worst;
}

int64_t EdgePairCount(const DayGraph& graph) {
  const int64_t grid =
      static_cast<int64_t>(graph.columns - 1) * graph.rows * (graph.rows + 1) / 2;
  return grid * (grid - 1) / 2;
}

namespace {

template <typename Scalar>
std::optional<CrossingPair> FindCrossFrom(const DayGraph& g,
                                          const EdgeFlow<Scalar>& flow,
                                          double tol, int from_column) {
  struct Positive {
    int y1, y2, e;
  };
  std::vector<Positive> pos;
  for (int x = from_column; x < g.columns; ++x) {
    pos.clear();
    // Grid edge ids of a column run in (y1, y2) order.
    for (int y1 = 1; y1 <= g.rows; ++y1) {
      for (int y2 = y1; y2 <= g.rows; ++y2) {
        const int e = g.GridEdge(x, y1, y2);
        if (ScalarTraits<Scalar>::IsPositive(flow[e], tol)) pos.push_back({y1, y2, e});
      }
    }
    for (size_t a = 0; a < pos.size(); ++a) {
      int best = -1;
      for (size_t b = a + 1; b < pos.size(); ++b) {
        if (pos[b].y1 <= pos[a].y1 || pos[b].y2 >= pos[a].y2) continue;
        if (best < 0 || std::tie(pos[b].y2, pos[b].y1) <
                            std::tie(pos[best].y2, pos[best].y1)) {
          best = static_cast<int>(b);
        }
      }
      if (best >= 0) return CrossingPair{x, pos[a].e, pos[best].e};
    }
  }
  return std::nullopt;
}

}  // namespace

template <typename Scalar>
std::optional<CrossingPair> FindNextCross(const DayGraph& graph,
                                          const EdgeFlow<Scalar>& flow,
                                          double tol_zero) {
  return FindCrossFrom(graph, flow, tol_zero, 1);
}

template <typename Scalar>
int64_t ResolveCrosses(const DayGraph& graph, EdgeFlow<Scalar>& flow,
                       double tol_zero) {
  int64_t count = 0;
  const int64_t budget = 4 * EdgePairCount(graph) + 16;
  int column = 1;
  // Rewiring touches one column only, so earlier columns stay clean.
  while (auto cross = FindCrossFrom(graph, flow, tol_zero, column)) {
    column = cross->column;
    const Edge& e = graph.edges[cross->e];
    const Edge& f = graph.edges[cross->e_prime];
    const int x = cross->column;
    Scalar fm = std::min(flow[cross->e], flow[cross->e_prime]);
    flow[cross->e] -= fm;
    flow[cross->e_prime] -= fm;
    flow[graph.GridEdge(x, e.from.row, f.to.row)] += fm;
    flow[graph.GridEdge(x, f.from.row, e.to.row)] += fm;
    if constexpr (!ScalarTraits<Scalar>::kExact) {
      if (flow[cross->e] <= tol_zero) flow[cross->e] = 0;
      if (flow[cross->e_prime] <= tol_zero) flow[cross->e_prime] = 0;
    }
    if (++count > budget) {
      throw Error(ErrorCode::kNumericalFailure,
                  "uncrossing exceeded its iteration budget");
    }
  }
  return count;
}

template <typename Scalar>
FlowPath<Scalar> TopMostFlowPath(const DayGraph& graph,
                                 const EdgeFlow<Scalar>& flow,
                                 double tol_zero) {
  auto highest = [&](const std::vector<int>& edges) {
    int best = -1;
    for (int e : edges) {
      if (!ScalarTraits<Scalar>::IsPositive(flow[e], tol_zero)) continue;
      const VertexId& to = graph.edges[e].to;
      if (to.kind == VertexId::Kind::kSink) return e;
      if (best < 0 || to.row > graph.edges[best].to.row) best = e;
    }
    return best;
  };
  FlowPath<Scalar> out;
  VertexId at = VertexId::Source();
  while (at.kind != VertexId::Kind::kSink) {
    const int e = highest(graph.out_edges[graph.VertexIndex(at)]);
    if (e < 0) {
      throw Error(ErrorCode::kExhaustedFlow,
                  at.kind == VertexId::Kind::kSource
                      ? "no flow left in round " + std::to_string(graph.t)
                      : "flow stops inside round " + std::to_string(graph.t));
    }
    if (out.path.empty() || flow[e] < out.size) out.size = flow[e];
    out.path.push_back(e);
    at = graph.edges[e].to;
  }
  return out;
}

template <typename Scalar>
std::vector<IntervalSupportEntry<Scalar>> DecomposeFlows(
    const PartitionSet& partitions, const std::vector<DayGraph>& graphs,
    std::vector<EdgeFlow<Scalar>> flows, int64_t max_step, double tol_zero) {
  if constexpr (ScalarTraits<Scalar>::kExact) tol_zero = 0;
  const ReachTable reach = BuildReach(partitions, max_step);
  const int horizon = static_cast<int>(graphs.size());
  std::vector<IntervalSupportEntry<Scalar>> support;
  auto mass = [&](int t) {
    Scalar m(0);
    const DayGraph& g = graphs[t];
    for (int e : g.out_edges[g.VertexIndex(VertexId::Source())]) m += flows[t][e];
    return m;
  };
  while (ScalarTraits<Scalar>::IsPositive(mass(0), tol_zero)) {
    std::vector<FlowPath<Scalar>> paths;
    paths.reserve(horizon);
    try {
      for (int t = 0; t < horizon; ++t) {
        paths.push_back(TopMostFlowPath(graphs[t], flows[t], tol_zero));
      }
    } catch (const Error&) {
      if constexpr (ScalarTraits<Scalar>::kExact) throw;
      break;  // leftover float dust
    }
    IntervalSupportEntry<Scalar> entry;
    entry.probability = paths[0].size;
    for (int t = 0; t < horizon; ++t) {
      entry.strategy.rows.push_back(PathRows(graphs[t], paths[t].path));
      if (paths[t].size < entry.probability) entry.probability = paths[t].size;
    }
    for (int t = 0; t + 1 < horizon; ++t) {
      for (size_t k = 0; k < entry.strategy.rows[t].size(); ++k) {
        const int y = entry.strategy.rows[t][k];
        const int next = entry.strategy.rows[t + 1][k];
        if (next < reach.first[t][y - 1] || next > reach.last[t][y - 1]) {
          throw Error(ErrorCode::kIncompatibleTopPaths,
                      "patrol " + std::to_string(k + 1) + " cannot move from row " +
                          std::to_string(y) + " of round " +
                          std::to_string(t + 1) + " to row " +
                          std::to_string(next));
        }
      }
    }
    for (int t = 0; t < horizon; ++t) {
      for (int e : paths[t].path) {
        flows[t][e] -= entry.probability;
        if constexpr (!ScalarTraits<Scalar>::kExact) {
          if (flows[t][e] <= tol_zero) flows[t][e] = 0;
        }
      }
    }
    support.push_back(std::move(entry));
  }
  return support;
}

PureStrategy ConcretizeStrategy(const IntervalStrategy& strategy,
                                const PartitionSet& partitions,
                                int64_t max_step, int patrol_count) {
  const int horizon = static_cast<int>(strategy.rows.size());
  const int effective = horizon > 0 ? static_cast<int>(strategy.rows[0].size()) : 0;
  PureStrategy pure;
  for (int k = 0; k < effective; ++k) {
    std::vector<int64_t> path;
    path.reserve(horizon);
    for (int t = 1; t <= horizon; ++t) {
      const Interval& in = partitions.round(t).interval(strategy.rows[t - 1][k]);
      const int64_t m =
          path.empty() ? in.lo : std::clamp(path.back(), in.lo, in.hi);
      if (!path.empty() && (m - path.back() > max_step || path.back() - m > max_step)) {
        throw Error(ErrorCode::kIncompatibleTopPaths,
                    "clamped walk of patrol " + std::to_string(k + 1) +
                        " breaks the speed limit at round " + std::to_string(t));
      }
      path.push_back(m);
    }
    pure.paths.push_back(std::move(path));
  }
  while (static_cast<int>(pure.paths.size()) < patrol_count && !pure.paths.empty()) {
    pure.paths.push_back(pure.paths.back());
  }
  return pure;
}

template <typename Scalar>
EquilibriumResult<Scalar> Solve(const ProblemInstance& instance,
                                const SolveOptions& options) {
  if (instance.mode != Mode::kDiscrete) {
    throw Error(ErrorCode::kInvalidArgument,
                "Solve takes discrete instances; use SolveContinuous");
  }
  const double tol = ScalarTraits<Scalar>::kExact ? 0.0 : options.tol_zero;
  EquilibriumResult<Scalar> result;
  result.partitions = BuildPartitions(instance);
  const std::vector<DayGraph> graphs = BuildDayGraphs(instance, result.partitions);
  result.stats.total_intervals = result.partitions.total_intervals();

  LpFlows<Scalar> lp;
  if (options.literal_lp) {
    lp = SolveLp<Scalar>(AssembleLp(instance, result.partitions, graphs), graphs,
                         options.lp);
  } else {
    lp = SolveCompactLp<Scalar>(instance, result.partitions, graphs, options.lp);
  }
  result.value = lp.value;
  result.stats.lp_iterations = lp.iterations;
  result.stats.exact_iterations = lp.exact_iterations;
  result.stats.separation_rounds = lp.separation_rounds;
  result.stats.compatibility_rows = lp.compatibility_rows;

  result.flows = std::move(lp.flows);
  for (size_t t = 0; t < graphs.size(); ++t) {
    result.stats.uncross_iterations.push_back(
        ResolveCrosses(graphs[t], result.flows[t], tol));
  }
  result.interval_support = DecomposeFlows(result.partitions, graphs,
                                           result.flows, instance.max_step(), tol);
  result.strategy.unit = 1;
  for (const auto& entry : result.interval_support) {
    result.strategy.support.push_back(
        {ConcretizeStrategy(entry.strategy, result.partitions,
                            instance.max_step(), instance.patrol_count),
         entry.probability});
  }
  return result;
}

#define LINEPATROL_INSTANTIATE(S)                                              \
  template LpFlows<S> SolveLp<S>(const AssembledLp&,                           \
                                 const std::vector<DayGraph>&,                 \
                                 const LPOptions&);                            \
  template LpFlows<S> SolveCompactLp<S>(                                       \
      const ProblemInstance&, const PartitionSet&,                             \
      const std::vector<DayGraph>&, const LPOptions&);                         \
  template S MaxCompatibilityViolation<S>(const PartitionSet&,                 \
                                          const std::vector<DayGraph>&,        \
                                          const std::vector<EdgeFlow<S>>&,     \
                                          int64_t);                            \
  template std::optional<CrossingPair> FindNextCross<S>(                       \
      const DayGraph&, const EdgeFlow<S>&, double);                            \
  template int64_t ResolveCrosses<S>(const DayGraph&, EdgeFlow<S>&, double);   \
  template FlowPath<S> TopMostFlowPath<S>(const DayGraph&, const EdgeFlow<S>&, \
                                          double);                             \
  template std::vector<IntervalSupportEntry<S>> DecomposeFlows<S>(             \
      const PartitionSet&, const std::vector<DayGraph>&,                       \
      std::vector<EdgeFlow<S>>, int64_t, double);                              \
  template EquilibriumResult<S> Solve<S>(const ProblemInstance&,               \
                                         const SolveOptions&);

LINEPATROL_INSTANTIATE(Rational)
LINEPATROL_INSTANTIATE(double)

#undef LINEPATROL_INSTANTIATE

}  // namespace linepatrol
