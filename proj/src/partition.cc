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

#include "linepatrol/partition.h"

#include <algorithm>
#include <string>

#include "linepatrol/error.h"

namespace linepatrol {

int TimePartition::IntervalOf(int64_t m) const {
  auto it = std::upper_bound(
      intervals.begin(), intervals.end(), m,
      [](int64_t value, const Interval& in) { return value < in.lo; });
  if (it == intervals.begin() || m > std::prev(it)->hi) {
    throw Error(ErrorCode::kInvalidArgument,
                "position " + std::to_string(m) + " outside round " +
                    std::to_string(t) + " partition");
  }
  return std::prev(it)->index;
}

int PartitionSet::total_intervals() const {
  int total = 0;
  for (const auto& r : rounds) total += r.size();
  return total;
}

std::pair<int64_t, int64_t> IntegerSpan(const EndPoint& start,
                                        const EndPoint& end) {
  // Smallest integer m with (m, 0) >= start.
  const int64_t lo =
      start.eps == 0 ? CeilToInt64(start.value) : FloorToInt64(start.value) + 1;
  // Largest integer m with (m, 0) < end.
  const int64_t hi =
      end.eps == 0 ? CeilToInt64(end.value) - 1 : FloorToInt64(end.value);
  return {lo, hi};
}

PartitionSet BuildPartitions(const ProblemInstance& instance) {
  const int64_t max_pos = instance.max_position();
  const int64_t step = instance.max_step();
  const Rational shift(static_cast<long>(step));
  const EndPoint lower = AtInteger(0);
  const EndPoint upper{Rational(static_cast<long>(max_pos)), 1};

  PartitionSet result;
  result.rounds.resize(instance.horizon);
  std::vector<EndPoint> next;
  for (int t = instance.horizon; t >= 1; --t) {
    std::vector<EndPoint> points = {lower, upper};
    auto insert = [&](EndPoint p) {
      if (lower < p && p < upper) points.push_back(std::move(p));
    };
    for (int a = 0; a < instance.num_targets(); ++a) {
      const Rational& x = instance.position(a, t);
      insert(EndPoint{x - instance.radius, 0});
      insert(EndPoint{x + instance.radius, 1});
    }
    for (const EndPoint& p : next) {
      insert(EndPoint{p.value - shift, p.eps});
      insert(EndPoint{p.value + shift, p.eps});
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    // Drop a cut point whose span up to its successor holds no integer; its
    // span merges into the preceding interval.
    std::vector<EndPoint> kept;
    kept.reserve(points.size());
    for (size_t i = 0; i + 1 < points.size(); ++i) {
      auto [lo, hi] = IntegerSpan(points[i], points[i + 1]);
      if (lo <= hi) kept.push_back(points[i]);
    }
    kept.push_back(points.back());

    TimePartition& part = result.rounds[t - 1];
    part.t = t;
    part.cut_points = kept;
    for (size_t i = 0; i + 1 < kept.size(); ++i) {
      Interval in;
      in.index = static_cast<int>(i) + 1;
      in.start = kept[i];
      in.end = kept[i + 1];
      std::tie(in.lo, in.hi) = IntegerSpan(in.start, in.end);
      part.intervals.push_back(std::move(in));
    }
    next = std::move(kept);
  }
  return result;
}

bool ProtectedByInterval(const Interval& interval, const Rational& pos,
                         const Rational& radius) {
  const int64_t lo = std::max(interval.lo, CeilToInt64(pos - radius));
  const int64_t hi = std::min(interval.hi, FloorToInt64(pos + radius));
  return lo <= hi;
}

bool FeasibleMoveExists(const Interval& from, const Interval& to,
                        int64_t max_step) {
  return to.lo <= from.hi + max_step && to.hi >= from.lo - max_step;
}

bool FeasibleMoveExists(const Interval& from, const Interval& to,
                        const Rational& speed) {
  return FeasibleMoveExists(from, to, FloorToInt64(speed));
}

std::pair<int, int> FeasibleSet(const PartitionSet& partitions,
                                int64_t max_step, int t, int i, int j) {
  if (t < 1 || t >= partitions.horizon()) {
    throw Error(ErrorCode::kInvalidArgument,
                "feasible set needs 1 <= t < T, got t = " + std::to_string(t));
  }
  const TimePartition& here = partitions.round(t);
  if (i < 1 || i > j || j > here.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad interval range " + std::to_string(i) + ".." +
                    std::to_string(j));
  }
  const auto& next = partitions.round(t + 1).intervals;
  const int64_t reach_lo = here.interval(i).lo - max_step;
  const int64_t reach_hi = here.interval(j).hi + max_step;
  // First interval whose top reaches down to reach_lo; last whose bottom is
  // within reach_hi.
  auto first = std::partition_point(
      next.begin(), next.end(),
      [&](const Interval& in) { return in.hi < reach_lo; });
  auto last = std::partition_point(
      next.begin(), next.end(),
      [&](const Interval& in) { return in.lo <= reach_hi; });
  if (first == next.end() || last == next.begin() ||
      first >= last) {
    throw Error(ErrorCode::kEmptyFeasibleSet,
                "no round-" + std::to_string(t + 1) +
                    " interval reachable from " + std::to_string(i) + ".." +
                    std::to_string(j));
  }
  return {first->index, std::prev(last)->index};
}

std::vector<std::pair<int, int>> SingleFeasibleSets(
    const PartitionSet& partitions, int64_t max_step, int t) {
  std::vector<std::pair<int, int>> sets;
  const int count = partitions.round(t).size();
  sets.reserve(count);
  for (int i = 1; i <= count; ++i) {
    sets.push_back(FeasibleSet(partitions, max_step, t, i, i));
  }
  return sets;
}

}  // namespace linepatrol
