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

// Checks that do not trust the solver: the attacker's exact best response
// to a mixed schedule, and the game value by brute force over every patrol
// schedule of a tiny instance.

#ifndef LINEPATROL_VERIFY_H_
#define LINEPATROL_VERIFY_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "linepatrol/core_model.h"
#include "linepatrol/equilibrium.h"
#include "linepatrol/rational.h"

namespace linepatrol {

template <typename Scalar>
struct BestResponseReport {
  Scalar value{};
  int target = -1;  // target index of the best attack
  int round = 0;
  // (target, round) -> w_a(t) * Pr[nobody within R of the target at t].
  std::map<std::pair<int, int>, Scalar> payoffs;
};

template <typename Scalar>
BestResponseReport<Scalar> AttackerBestResponse(
    const ProblemInstance& instance, const MixedStrategy<Scalar>& strategy);

// Payoff of the attack (target, t) against a pure schedule.
Rational PurePayoff(const ProblemInstance& instance,
                    const PureStrategy& strategy, const Rational& unit,
                    int target, int t);

inline constexpr int64_t kDefaultOracleCap = 50'000;

// Every schedule of min(K, n T) patrols up to relabeling, i.e. every
// sequence of sorted position tuples whose k-th entries move at most
// floor(D) per round. Discrete instances only. Throws kTooLarge past `cap`.
std::vector<PureStrategy> EnumeratePureStrategies(
    const ProblemInstance& instance, int64_t cap = kDefaultOracleCap);

// Value of the zero-sum matrix game over all enumerated schedules. Continuous
// instances are scaled to integers first.
Rational MatrixGameValue(const ProblemInstance& instance,
                         int64_t cap = kDefaultOracleCap);

struct CheckEntry {
  std::string name;
  bool passed = true;
  bool skipped = false;
  double magnitude = 0;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckEntry> checks;
  bool passed() const;
};

// Probability sum, speed and bounds of the support, best response against
// the claimed value and, within the cap, brute-force value. Exact for
// Rational; 1e-6 for double.
template <typename Scalar>
CheckReport CheckEquilibrium(const ProblemInstance& instance,
                             const Scalar& value,
                             const MixedStrategy<Scalar>& strategy,
                             int64_t cap = kDefaultOracleCap);

template <typename Scalar>
CheckReport CheckEquilibrium(const ProblemInstance& instance,
                             const EquilibriumResult<Scalar>& result,
                             int64_t cap = kDefaultOracleCap) {
  return CheckEquilibrium(instance, result.value, result.strategy, cap);
}

}  // namespace linepatrol

#endif  // LINEPATROL_VERIFY_H_
