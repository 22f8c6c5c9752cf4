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

// Sparse linear programs with exact rational data, and a revised simplex
// solver. Minimize<Rational> is exact: floating-point pivots find a
// candidate basis, which is then refactored in rationals and finished with
// Bland's rule. Minimize<double> stops after the floating-point phase.

#ifndef LINEPATROL_LP_H_
#define LINEPATROL_LP_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "linepatrol/rational.h"

namespace linepatrol {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearTerm {
  int var;
  Rational coef;
};

struct LPConstraint {
  std::vector<LinearTerm> terms;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
  std::string name;
};

class LPModel {
 public:
  // Variables are bounded below by `lower` (0 by default) unless free.
  int AddVariable(const std::string& name = "", const Rational& lower = 0);
  int AddFreeVariable(const std::string& name = "");
  int AddConstraint(std::vector<LinearTerm> terms, Relation relation,
                    const Rational& rhs, const std::string& name = "");
  // Objective to minimize.
  void SetObjective(std::vector<LinearTerm> terms);

  int num_variables() const { return static_cast<int>(lower_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const LPConstraint& constraint(int i) const { return constraints_[i]; }
  const std::vector<LPConstraint>& constraints() const { return constraints_; }
  const std::vector<LinearTerm>& objective() const { return objective_; }
  bool is_free(int var) const { return free_[var] != 0; }
  const Rational& lower_bound(int var) const { return lower_[var]; }
  // "x<var>" when no name was given.
  std::string name(int var) const;

  // Throws kInvalidArgument on a bad or repeated variable index.
  void Validate() const;

 private:
  std::vector<Rational> lower_;
  std::vector<char> free_;
  std::vector<std::string> names_;
  std::vector<LPConstraint> constraints_;
  std::vector<LinearTerm> objective_;
};

template <typename Scalar>
struct LPSolution {
  std::vector<Scalar> values;
  Scalar objective{};
  // One multiplier per constraint with objective = sum duals * rhs when all
  // variables have lower bound 0. Sign: <= rows get <= 0, >= rows >= 0.
  std::vector<Scalar> duals;
  int64_t iterations = 0;
  // Pivots done in exact arithmetic (0 for double).
  int64_t exact_iterations = 0;
};

struct LPOptions {
  // Feasibility and optimality tolerance of the floating-point phase.
  double tolerance = 1e-9;
  // Exact solves start from the floating-point optimal basis.
  bool warm_start = true;
  int64_t max_iterations = 20'000'000;
};

// Throws Error with kInfeasible, kUnbounded, or kNumericalFailure.
template <typename Scalar>
LPSolution<Scalar> Minimize(const LPModel& model, const LPOptions& options = {});

template <>
LPSolution<Rational> Minimize<Rational>(const LPModel& model,
                                        const LPOptions& options);
template <>
LPSolution<double> Minimize<double>(const LPModel& model,
                                    const LPOptions& options);

// Largest amount by which `values` violates a constraint or bound.
template <typename Scalar>
Scalar MaxViolation(const LPModel& model, const std::vector<Scalar>& values) {
  Scalar worst(0);
  for (int v = 0; v < model.num_variables(); ++v) {
    if (model.is_free(v)) continue;
    Scalar gap = ScalarTraits<Scalar>::FromRational(model.lower_bound(v)) -
                 values[v];
    if (gap > worst) worst = gap;
  }
  for (const LPConstraint& c : model.constraints()) {
    Scalar lhs(0);
    for (const LinearTerm& term : c.terms) {
      lhs += ScalarTraits<Scalar>::FromRational(term.coef) * values[term.var];
    }
    Scalar diff = lhs - ScalarTraits<Scalar>::FromRational(c.rhs);
    Scalar gap(0);
    switch (c.relation) {
      case Relation::kLessEqual: gap = diff; break;
      case Relation::kGreaterEqual: gap = -diff; break;
      case Relation::kEqual: gap = diff < Scalar(0) ? Scalar(-diff) : diff; break;
    }
    if (gap > worst) worst = gap;
  }
  return worst;
}

// CPLEX LP text format. Coefficients with a terminating decimal expansion
// are written exactly, others with 17 significant digits.
void WriteLpFormat(const LPModel& model, std::ostream& out);

}  // namespace linepatrol

#endif  // LINEPATROL_LP_H_
