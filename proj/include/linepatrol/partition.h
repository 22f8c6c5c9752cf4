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

// Per-round partition of the patrol positions [0, M] into intervals whose
// positions are interchangeable: every position of an interval protects the
// same targets and reaches the same intervals of the next round. Partitions
// are built from the last round backwards; each round's cut points are the
// target protection boundaries x - R and x + R + eps plus the +-D shifts of
// the next round's cut points.

#ifndef LINEPATROL_PARTITION_H_
#define LINEPATROL_PARTITION_H_

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "linepatrol/core_model.h"
#include "linepatrol/rational.h"

namespace linepatrol {

// value + eps * epsilon for an infinitesimal epsilon > 0.
struct EndPoint {
  Rational value;
  int eps = 0;

  friend bool operator==(const EndPoint& a, const EndPoint& b) {
    return a.eps == b.eps && a.value == b.value;
  }
  friend std::strong_ordering operator<=>(const EndPoint& a,
                                          const EndPoint& b) {
    const int c = cmp(a.value, b.value);
    if (c != 0) return c < 0 ? std::strong_ordering::less
                             : std::strong_ordering::greater;
    return a.eps <=> b.eps;
  }
};

inline EndPoint AtInteger(int64_t m) {
  return EndPoint{Rational(static_cast<long>(m)), 0};
}

// Half-open span [start, end) and the integers it contains.
struct Interval {
  int index = 0;  // 1-based within its round
  EndPoint start;
  EndPoint end;
  int64_t lo = 0;
  int64_t hi = -1;

  int64_t size() const { return hi - lo + 1; }
  bool Contains(int64_t m) const { return lo <= m && m <= hi; }
};

struct TimePartition {
  int t = 0;
  std::vector<EndPoint> cut_points;
  std::vector<Interval> intervals;

  int size() const { return static_cast<int>(intervals.size()); }
  // 1-based access.
  const Interval& interval(int i) const { return intervals[i - 1]; }
  // 1-based index of the interval holding integer position m.
  int IntervalOf(int64_t m) const;
};

struct PartitionSet {
  std::vector<TimePartition> rounds;

  int horizon() const { return static_cast<int>(rounds.size()); }
  const TimePartition& round(int t) const { return rounds[t - 1]; }
  int total_intervals() const;
};

// Integers in [start, end): {lo..hi}, empty when lo > hi.
std::pair<int64_t, int64_t> IntegerSpan(const EndPoint& start,
                                        const EndPoint& end);

PartitionSet BuildPartitions(const ProblemInstance& instance);

// Some integer m in the interval has |pos - m| <= R.
bool ProtectedByInterval(const Interval& interval, const Rational& pos,
                         const Rational& radius);

// Some m in `from` and m' in `to` have |m - m'| <= max_step.
bool FeasibleMoveExists(const Interval& from, const Interval& to,
                        int64_t max_step);
bool FeasibleMoveExists(const Interval& from, const Interval& to,
                        const Rational& speed);

// Contiguous 1-based index range [first, last] of round-(t+1) intervals
// reachable from intervals i..j of round t. Throws kEmptyFeasibleSet.
std::pair<int, int> FeasibleSet(const PartitionSet& partitions,
                                int64_t max_step, int t, int i, int j);

// FeasibleSet(t, i, i) for every interval i of round t, 0-based vector.
std::vector<std::pair<int, int>> SingleFeasibleSets(
    const PartitionSet& partitions, int64_t max_step, int t);

}  // namespace linepatrol

#endif  // LINEPATROL_PARTITION_H_
