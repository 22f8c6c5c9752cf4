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

#include "linepatrol/continuous.h"

namespace linepatrol {

mpz_class ScaleFactorOf(const ProblemInstance& instance) {
  mpz_class m = 1;
  auto take = [&](const Rational& v) {
    mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), v.get_den_mpz_t());
  };
  take(instance.space_max);
  take(instance.speed);
  take(instance.radius);
  for (const TargetTrack& track : instance.targets) {
    for (const Rational& x : track.positions) take(x);
  }
  return m;
}

ScaledInstance ScaleInstance(const ProblemInstance& instance) {
  ScaledInstance out;
  out.factor = ScaleFactorOf(instance);
  const Rational m(out.factor);
  RawInstance raw = ToRaw(instance);
  raw.mode = Mode::kDiscrete;
  raw.space_max *= m;
  raw.speed *= m;
  raw.radius *= m;
  for (TargetTrack& track : raw.targets) {
    for (Rational& x : track.positions) x *= m;
  }
  out.instance = ValidateInstance(raw);
  return out;
}

template <typename Scalar>
EquilibriumResult<Scalar> SolveContinuous(const ProblemInstance& instance,
                                          const SolveOptions& options) {
  const ScaledInstance scaled = ScaleInstance(instance);
  EquilibriumResult<Scalar> result = Solve<Scalar>(scaled.instance, options);
  result.strategy.unit = Rational(1) / Rational(scaled.factor);
  return result;
}

template EquilibriumResult<Rational> SolveContinuous<Rational>(
    const ProblemInstance&, const SolveOptions&);
template EquilibriumResult<double> SolveContinuous<double>(
    const ProblemInstance&, const SolveOptions&);

}  // namespace linepatrol
