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

// Minimax patrol schedules. One flow per round over the day graph, coupled
// across rounds by compatibility constraints (the mass on a block of rows
// of column k must fit into what column k of the next round can receive from
// that block). After solving, crossing flows are rewired so each day graph
// carries a laminar flow, the per-round top-most paths are peeled off as
// interval strategies, and each interval path is pinned to integer positions.

#ifndef LINEPATROL_EQUILIBRIUM_H_
#define LINEPATROL_EQUILIBRIUM_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "linepatrol/core_model.h"
#include "linepatrol/day_graph.h"
#include "linepatrol/lp.h"
#include "linepatrol/partition.h"
#include "linepatrol/rational.h"

namespace linepatrol {

std::vector<DayGraph> BuildDayGraphs(const ProblemInstance& instance,
                                     const PartitionSet& partitions);

struct LpCounts {
  int variables = 0;
  int conservation = 0;
  int source = 0;
  int sink = 0;
  int cost = 0;
  int compatibility = 0;
};

// The full program: one variable per edge of every round plus u, every
// compatibility range written out.
struct AssembledLp {
  LPModel model;
  std::vector<int> edge_offset;  // first variable of round t at [t - 1]
  int u = -1;
  LpCounts counts;
};

AssembledLp AssembleLp(const ProblemInstance& instance,
                       const PartitionSet& partitions,
                       const std::vector<DayGraph>& graphs);

template <typename Scalar>
struct LpFlows {
  Scalar value{};
  std::vector<EdgeFlow<Scalar>> flows;  // per round, [t - 1]
  int64_t iterations = 0;
  int64_t exact_iterations = 0;
  int separation_rounds = 0;
  int compatibility_rows = 0;
};

// Solves the assembled program as is.
template <typename Scalar>
LpFlows<Scalar> SolveLp(const AssembledLp& lp,
                        const std::vector<DayGraph>& graphs,
                        const LPOptions& options = {});

// Same optimum from a smaller program: vertex through-flows get their own
// variables and compatibility ranges are added only when violated.
// Separation runs over every range, exactly for Rational.
template <typename Scalar>
LpFlows<Scalar> SolveCompactLp(const ProblemInstance& instance,
                               const PartitionSet& partitions,
                               const std::vector<DayGraph>& graphs,
                               const LPOptions& options = {});

// Largest violation of any compatibility range by the given flows.
template <typename Scalar>
Scalar MaxCompatibilityViolation(const PartitionSet& partitions,
                                 const std::vector<DayGraph>& graphs,
                                 const std::vector<EdgeFlow<Scalar>>& flows,
                                 int64_t max_step);

// Edges e = v(x, y1) -> v(x + 1, y2) and e' = v(x, y1') -> v(x + 1, y2')
// with y1 < y1' and y2 > y2'.
struct CrossingPair {
  int column = 0;
  int e = -1;
  int e_prime = -1;
};

// The least crossing pair with both flows above tol_zero, ordered by
// (x, y1, y2, y2', y1').
template <typename Scalar>
std::optional<CrossingPair> FindNextCross(const DayGraph& graph,
                                          const EdgeFlow<Scalar>& flow,
                                          double tol_zero = 0);

// Rewires crossing pairs until none is left. Returns the number of rewires.
template <typename Scalar>
int64_t ResolveCrosses(const DayGraph& graph, EdgeFlow<Scalar>& flow,
                       double tol_zero = 0);

// Unordered pairs of column-to-column edges: the rewire budget.
int64_t EdgePairCount(const DayGraph& graph);

template <typename Scalar>
struct FlowPath {
  CanonicalPath path;
  Scalar size{};
};

// Greedy highest-row walk over edges with flow above tol_zero. Throws
// kExhaustedFlow when no mass is left.
template <typename Scalar>
FlowPath<Scalar> TopMostFlowPath(const DayGraph& graph,
                                 const EdgeFlow<Scalar>& flow,
                                 double tol_zero = 0);

// rows[t - 1][k - 1]: the interval of patrol k at round t. Rows are
// non-decreasing in k.
struct IntervalStrategy {
  std::vector<std::vector<int>> rows;

  friend bool operator==(const IntervalStrategy&,
                         const IntervalStrategy&) = default;
};

template <typename Scalar>
struct IntervalSupportEntry {
  IntervalStrategy strategy;
  Scalar probability{};
};

// Peels top-most paths off non-crossing flows. Throws kIncompatibleTopPaths
// if a peeled patrol cannot move between its intervals.
template <typename Scalar>
std::vector<IntervalSupportEntry<Scalar>> DecomposeFlows(
    const PartitionSet& partitions, const std::vector<DayGraph>& graphs,
    std::vector<EdgeFlow<Scalar>> flows, int64_t max_step,
    double tol_zero = 0);

// Clamped walk through the intervals. Patrols beyond the effective count
// copy the last one.
PureStrategy ConcretizeStrategy(const IntervalStrategy& strategy,
                                const PartitionSet& partitions,
                                int64_t max_step, int patrol_count);

struct SolveOptions {
  LPOptions lp;
  // Flow threshold for the double pipeline; Rational always uses 0.
  double tol_zero = 1e-9;
  // Solve the fully written-out program instead of the compact one.
  bool literal_lp = false;
};

struct SolveStats {
  int total_intervals = 0;
  int64_t lp_iterations = 0;
  int64_t exact_iterations = 0;
  int separation_rounds = 0;
  int compatibility_rows = 0;
  std::vector<int64_t> uncross_iterations;  // per round
};

template <typename Scalar>
struct EquilibriumResult {
  Scalar value{};
  std::vector<EdgeFlow<Scalar>> flows;  // after uncrossing
  MixedStrategy<Scalar> strategy;
  std::vector<IntervalSupportEntry<Scalar>> interval_support;
  PartitionSet partitions;
  SolveStats stats;
};

// Discrete instances only. Throws kInvalidArgument for continuous ones.
template <typename Scalar>
EquilibriumResult<Scalar> Solve(const ProblemInstance& instance,
                                const SolveOptions& options = {});

}  // namespace linepatrol

#endif  // LINEPATROL_EQUILIBRIUM_H_
