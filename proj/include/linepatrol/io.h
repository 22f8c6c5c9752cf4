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

// JSON documents for instances, solver results and strategies, the random
// instance generator and the ASCII timeline.
//
// Instance document:
//   {"mode": "discrete", "T": 1, "M": "2", "K": 1, "D": "0", "R": "0",
//    "targets": [{"id": 0, "positions": ["0"], "weights": ["1"]}, ...]}
// Numbers are strings ("3", "-1/2", "0.25") or JSON integers. JSON floats
// are rejected. "mode" defaults to discrete and "id" to the list index.

#ifndef LINEPATROL_IO_H_
#define LINEPATROL_IO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "linepatrol/core_model.h"
#include "linepatrol/equilibrium.h"
#include "linepatrol/rational.h"
#include "linepatrol/verify.h"

namespace linepatrol {

// Throws kParseError naming the JSON location ("$.targets[0].weights[2]"),
// or the validation errors of ValidateInstance.
ProblemInstance ParseInstance(std::string_view text);

std::string SerializeInstance(const ProblemInstance& instance);

// Exact value of a double, e.g. 0.1 -> "3602879701896397/36028797018963968".
Rational ExactRational(double value);

struct ResultFormat {
  bool flows = false;
};

// {"value", "unit", "support": [{"probability", "paths"}], "stats"} and, on
// request, "intervals" and the nonzero "flows" of every round. Positions
// are real positions. Double values are written as the exact rational of
// the double.
template <typename Scalar>
std::string SerializeResult(const EquilibriumResult<Scalar>& result,
                            const ResultFormat& format = {});

// A claimed value and mixed strategy, as in a result document. Positions
// are put on the grid of the lcm of their denominators.
struct StrategyDocument {
  Rational value;
  MixedStrategy<Rational> strategy;
};

StrategyDocument ParseStrategy(std::string_view text);

std::string SerializeReport(const CheckReport& report);

struct GenOptions {
  uint64_t seed = 0;
  int horizon = 3;
  int64_t space_max = 6;
  int patrols = 2;
  int targets = 2;
  std::optional<int64_t> speed;   // random in [0, max(1, M / 2)] if unset
  std::optional<int64_t> radius;  // random in [0, M / 4] if unset
  int max_weight = 3;
};

// Integer instance; the same options give the same instance on every
// platform.
ProblemInstance GenerateInstance(const GenOptions& options);

// Rows at interval boundaries (at most max_rows of them), one column per
// round. '+' marks a cut, 'T' a target, letters the support strategies.
template <typename Scalar>
std::string RenderTimeline(const ProblemInstance& instance,
                           const EquilibriumResult<Scalar>& result,
                           int max_rows = 40);

}  // namespace linepatrol

#endif  // LINEPATROL_IO_H_
