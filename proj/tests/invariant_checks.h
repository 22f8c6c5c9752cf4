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

// Brute-force checks of partition, day graph, uncrossing and decomposition
// properties. Each returns an empty string on success, else what broke.
// Everything here scans integers or simulates patrols directly.

#ifndef LINEPATROL_TESTS_INVARIANT_CHECKS_H_
#define LINEPATROL_TESTS_INVARIANT_CHECKS_H_

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linepatrol/core_model.h"
#include "linepatrol/day_graph.h"
#include "linepatrol/equilibrium.h"
#include "linepatrol/partition.h"

namespace linepatrol::testing {

inline std::string Where(int t, int i) {
  return "round " + std::to_string(t) + " interval " + std::to_string(i);
}

// Every integer of [0, M] lies in exactly one non-empty interval.
inline std::string CheckCoverage(const ProblemInstance& inst,
                                 const PartitionSet& parts) {
  const int64_t top = inst.max_position();
  if (parts.horizon() != inst.horizon) return "wrong number of rounds";
  for (int t = 1; t <= inst.horizon; ++t) {
    std::vector<int> hits(top + 1, 0);
    for (const Interval& in : parts.round(t).intervals) {
      if (in.lo > in.hi) return Where(t, in.index) + " is empty";
      for (int64_t m = in.lo; m <= in.hi; ++m) {
        if (m < 0 || m > top) return Where(t, in.index) + " leaves [0, M]";
        ++hits[m];
      }
    }
    for (int64_t m = 0; m <= top; ++m) {
      if (hits[m] != 1) {
        return "round " + std::to_string(t) + ": position " +
               std::to_string(m) + " in " + std::to_string(hits[m]) +
               " intervals";
      }
    }
  }
  return "";
}

// All integers of an interval protect the same targets.
inline std::string CheckProtectionUniform(const ProblemInstance& inst,
                                          const PartitionSet& parts) {
  for (int t = 1; t <= inst.horizon; ++t) {
    for (const Interval& in : parts.round(t).intervals) {
      for (int a = 0; a < inst.num_targets(); ++a) {
        const bool first = Protects(in.lo, inst.position(a, t), inst.radius);
        for (int64_t m = in.lo + 1; m <= in.hi; ++m) {
          if (Protects(m, inst.position(a, t), inst.radius) != first) {
            return Where(t, in.index) + " splits target " + std::to_string(a);
          }
        }
      }
    }
  }
  return "";
}

// For I at t and J at t + 1, all or none of I can step into J.
inline std::string CheckMoveUniform(const ProblemInstance& inst,
                                    const PartitionSet& parts) {
  const int64_t d = inst.max_step();
  for (int t = 1; t < inst.horizon; ++t) {
    for (const Interval& from : parts.round(t).intervals) {
      for (const Interval& to : parts.round(t + 1).intervals) {
        int reach = 0;
        for (int64_t m = from.lo; m <= from.hi; ++m) {
          bool ok = false;
          for (int64_t m2 = to.lo; m2 <= to.hi && !ok; ++m2) {
            ok = std::abs(m - m2) <= d;
          }
          reach += ok;
        }
        if (reach != 0 && reach != from.size()) {
          return Where(t, from.index) + " partly reaches interval " +
                 std::to_string(to.index);
        }
      }
    }
  }
  return "";
}

// Brute-force reachable intervals from i..j form a contiguous block that
// matches FeasibleSet.
inline std::string CheckFeasibleSets(const ProblemInstance& inst,
                                     const PartitionSet& parts) {
  const int64_t d = inst.max_step();
  for (int t = 1; t < inst.horizon; ++t) {
    const TimePartition& here = parts.round(t);
    const TimePartition& next = parts.round(t + 1);
    for (int i = 1; i <= here.size(); ++i) {
      std::set<int> reach;
      for (int j = i; j <= here.size(); ++j) {
        for (int64_t m = here.interval(j).lo; m <= here.interval(j).hi; ++m) {
          for (int64_t m2 = std::max<int64_t>(0, m - d);
               m2 <= std::min(inst.max_position(), m + d); ++m2) {
            reach.insert(next.IntervalOf(m2));
          }
        }
        const int lo = *reach.begin();
        const int hi = *reach.rbegin();
        if (hi - lo + 1 != static_cast<int>(reach.size())) {
          return Where(t, i) + ".." + std::to_string(j) +
                 " reaches a non-contiguous set";
        }
        const auto got = FeasibleSet(parts, d, t, i, j);
        if (got.first != lo || got.second != hi) {
          return Where(t, i) + ".." + std::to_string(j) +
                 " feasible set mismatch";
        }
      }
    }
  }
  return "";
}

inline int64_t IntervalBound(const ProblemInstance& inst) {
  const int64_t n = inst.num_targets();
  const int64_t t = inst.horizon;
  return 8 * n * t * t * t + 2 * t;
}

inline std::string CheckPartitionInvariants(const ProblemInstance& inst) {
  const PartitionSet parts = BuildPartitions(inst);
  for (auto* check : {&CheckCoverage, &CheckProtectionUniform,
                      &CheckMoveUniform, &CheckFeasibleSets}) {
    std::string err = check(inst, parts);
    if (!err.empty()) return err;
  }
  if (parts.total_intervals() > IntervalBound(inst)) {
    return "interval count " + std::to_string(parts.total_intervals()) +
           " above bound";
  }
  return "";
}

// Weighted count of targets nobody protects, with patrols at the given
// integer positions.
inline Rational SimulatedMiss(const ProblemInstance& inst, int t, int target,
                              const std::vector<int64_t>& spots) {
  for (int64_t m : spots) {
    if (Protects(m, inst.position(target, t), inst.radius)) return 0;
  }
  return inst.weight(target, t);
}

inline std::vector<int> RandomSnapshot(std::mt19937_64& rng, int rows,
                                       int columns) {
  std::uniform_int_distribution<int> row(1, rows);
  std::vector<int> s(columns);
  for (int& y : s) y = row(rng);
  std::sort(s.begin(), s.end());
  return s;
}

inline std::vector<int64_t> RandomSpots(std::mt19937_64& rng,
                                        const TimePartition& part,
                                        const std::vector<int>& rows) {
  std::vector<int64_t> spots;
  for (int y : rows) {
    const Interval& in = part.interval(y);
    spots.push_back(
        std::uniform_int_distribution<int64_t>(in.lo, in.hi)(rng));
  }
  return spots;
}

// Graph shape, cover-flag betweenness, path payoffs against simulation on
// random snapshots, and flow costs against simulation on random mixtures.
inline std::string CheckDayGraphInvariants(const ProblemInstance& inst,
                                       std::mt19937_64& rng, int samples) {
  const PartitionSet parts = BuildPartitions(inst);
  for (int t = 1; t <= inst.horizon; ++t) {
    const TimePartition& part = parts.round(t);
    const DayGraph g = BuildDayGraph(inst, parts, t);
    const int k = inst.effective_patrols;
    const std::string at = "round " + std::to_string(t) + ": ";
    if (g.num_edges() != 2 * g.rows + (k - 1) * g.rows * (g.rows + 1) / 2) {
      return at + "edge count";
    }
    for (const Edge& e : g.edges) {
      if (e.from.kind == VertexId::Kind::kGrid &&
          e.to.kind == VertexId::Kind::kGrid &&
          (e.to.column != e.from.column + 1 || e.to.row < e.from.row)) {
        return at + "grid edge goes backwards";
      }
      const Interval* below = e.from.kind == VertexId::Kind::kGrid
                                  ? &part.interval(e.from.row)
                                  : nullptr;
      const Interval* above = e.to.kind == VertexId::Kind::kGrid
                                  ? &part.interval(e.to.row)
                                  : nullptr;
      for (int a : e.uncovered) {
        const Rational& x = inst.position(a, t);
        if ((below && !(x > below->hi)) || (above && !(x < above->lo))) {
          return at + "uncovered target not between its edge's intervals";
        }
      }
    }
    for (int s = 0; s < samples; ++s) {
      const std::vector<int> rows = RandomSnapshot(rng, g.rows, k);
      const CanonicalPath path = SnapshotToPath(g, rows);
      if (static_cast<int>(path.size()) != k + 1) return at + "path length";
      if (PathRows(g, path) != rows) return at + "path rows";
      const std::vector<int64_t> spots = RandomSpots(rng, part, rows);
      for (int a = 0; a < inst.num_targets(); ++a) {
        if (PathPayoff(g, path, a) != SimulatedMiss(inst, t, a, spots)) {
          return at + "path payoff differs from simulation, target " +
                 std::to_string(a);
        }
      }
    }
    for (int s = 0; s < samples; ++s) {
      const int size = std::uniform_int_distribution<int>(1, 4)(rng);
      std::vector<WeightedSnapshot<Rational>> mix;
      std::vector<std::vector<int64_t>> spots;
      Rational total = 0;
      for (int j = 0; j < size; ++j) {
        const int mass = std::uniform_int_distribution<int>(1, 6)(rng);
        mix.push_back({RandomSnapshot(rng, g.rows, k), Rational(mass)});
        spots.push_back(RandomSpots(rng, part, mix.back().rows));
        total += mass;
      }
      for (auto& m : mix) m.probability /= total;
      const EdgeFlow<Rational> flow = MixedToFlow(g, mix);
      Rational best = 0;
      const std::vector<Rational> costs = TargetCosts(g, flow);
      for (int a = 0; a < inst.num_targets(); ++a) {
        Rational expect = 0;
        for (int j = 0; j < size; ++j) {
          expect += mix[j].probability * SimulatedMiss(inst, t, a, spots[j]);
        }
        if (costs[a] != expect) return at + "target cost differs";
        if (expect > best) best = expect;
      }
      if (FlowCost(g, flow) != best) return at + "flow cost differs";
    }
  }
  return "";
}

// Grid through-flows of every vertex.
inline std::vector<Rational> AllThroughFlows(const DayGraph& g,
                                             const EdgeFlow<Rational>& f) {
  std::vector<Rational> out;
  for (int x = 1; x <= g.columns; ++x) {
    for (int y = 1; y <= g.rows; ++y) out.push_back(ThroughFlow(g, f, x, y));
  }
  return out;
}

// Runs ResolveCrosses on a copy and checks the result: no crossing pair,
// through-flows unchanged, no target cost raised, rewires within budget.
inline std::string CheckUncrossing(const DayGraph& g,
                                   const EdgeFlow<Rational>& before,
                                   int64_t* rewires = nullptr) {
  EdgeFlow<Rational> after = before;
  const int64_t n = ResolveCrosses(g, after);
  if (rewires) *rewires = n;
  if (FindNextCross(g, after).has_value()) return "crossing pair left";
  if (AllThroughFlows(g, before) != AllThroughFlows(g, after)) {
    return "through-flow changed";
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (after[e] < 0) return "negative edge flow";
  }
  const auto cb = TargetCosts(g, before);
  const auto ca = TargetCosts(g, after);
  for (size_t a = 0; a < cb.size(); ++a) {
    if (ca[a] > cb[a]) return "target cost went up";
  }
  if (n > EdgePairCount(g)) return "rewire count above edge-pair count";
  return "";
}

// Support-induced edge flows, per round.
inline std::vector<EdgeFlow<Rational>> InducedFlows(
    const std::vector<DayGraph>& graphs,
    const std::vector<IntervalSupportEntry<Rational>>& support) {
  std::vector<EdgeFlow<Rational>> flows;
  for (const DayGraph& g : graphs) {
    flows.push_back(EdgeFlow<Rational>::Zero(g.num_edges()));
  }
  for (const auto& entry : support) {
    for (size_t t = 0; t < graphs.size(); ++t) {
      for (int e : SnapshotToPath(graphs[t], entry.strategy.rows[t])) {
        flows[t][e] += entry.probability;
      }
    }
  }
  return flows;
}

// The decomposition reproduces the uncrossed flows, is no larger than the
// edge count, and every patrol can move between its consecutive intervals.
inline std::string CheckDecomposition(
    const ProblemInstance& inst, const EquilibriumResult<Rational>& result) {
  const std::vector<DayGraph> graphs =
      BuildDayGraphs(inst, result.partitions);
  const auto induced = InducedFlows(graphs, result.interval_support);
  for (size_t t = 0; t < graphs.size(); ++t) {
    if (induced[t] != result.flows[t]) {
      return "round " + std::to_string(t + 1) + ": induced flow differs";
    }
  }
  int64_t edges = 0;
  for (const DayGraph& g : graphs) edges += g.num_edges();
  if (static_cast<int64_t>(result.interval_support.size()) > edges) {
    return "support larger than edge count";
  }
  const int64_t d = inst.max_step();
  Rational total = 0;
  for (const auto& entry : result.interval_support) {
    if (sgn(entry.probability) <= 0) return "non-positive probability";
    total += entry.probability;
    for (int t = 1; t < inst.horizon; ++t) {
      for (size_t k = 0; k < entry.strategy.rows[t - 1].size(); ++k) {
        const Interval& from =
            result.partitions.round(t).interval(entry.strategy.rows[t - 1][k]);
        const Interval& to =
            result.partitions.round(t + 1).interval(entry.strategy.rows[t][k]);
        if (!FeasibleMoveExists(from, to, d)) {
          return "patrol " + std::to_string(k) + " cannot move at round " +
                 std::to_string(t);
        }
      }
    }
  }
  if (total != 1) return "support probabilities sum to " + ToString(total);
  return "";
}

}  // namespace linepatrol::testing

#endif  // LINEPATROL_TESTS_INVARIANT_CHECKS_H_
