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

// Real-valued patrol positions. Multiplying every length by the lcm m of
// all denominators makes the data integral; a patrol at a fractional point
// of the scaled line can be floored without changing what it protects, so
// the scaled integer game has the same value.

#ifndef LINEPATROL_CONTINUOUS_H_
#define LINEPATROL_CONTINUOUS_H_

#include <gmpxx.h>

#include "linepatrol/core_model.h"
#include "linepatrol/equilibrium.h"

namespace linepatrol {

// lcm of the denominators of all positions, D, R and M.
mpz_class ScaleFactorOf(const ProblemInstance& instance);

struct ScaledInstance {
  ProblemInstance instance;  // discrete
  mpz_class factor;
};

// Lengths multiplied by the scale factor, weights untouched.
ScaledInstance ScaleInstance(const ProblemInstance& instance);

// Solves the scaled instance and maps positions back: the strategy's unit
// becomes 1/m.
template <typename Scalar>
EquilibriumResult<Scalar> SolveContinuous(const ProblemInstance& instance,
                                          const SolveOptions& options = {});

}  // namespace linepatrol

#endif  // LINEPATROL_CONTINUOUS_H_
