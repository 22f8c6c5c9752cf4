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

#include "linepatrol/verify.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "linepatrol/continuous.h"
#include "linepatrol/error.h"
#include "linepatrol/lp.h"

namespace linepatrol {
namespace {

bool Unprotected(const ProblemInstance& instance, const PureStrategy& strategy,
                 const Rational& unit, int target, int t) {
  const Rational& x = instance.position(target, t);
  for (const auto& path : strategy.paths) {
    const Rational pos = Rational(static_cast<long>(path[t - 1])) * unit;
    if (Protects(pos, x, instance.radius)) return false;
  }
  return true;
}

double Magnitude(const Rational& v) { return std::fabs(v.get_d()); }
double Magnitude(double v) { return std::fabs(v); }

std::string Show(const Rational& v) { return ToString(v); }
std::string Show(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

template <typename Scalar>
bool Close(const Scalar& a, const Scalar& b) {
  if constexpr (ScalarTraits<Scalar>::kExact) {
    return a == b;
  } else {
    return std::fabs(a - b) <= 1e-6;
  }
}

}  // namespace

bool CheckReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckEntry& c) { return c.passed; });
}

template <typename Scalar>
BestResponseReport<Scalar> AttackerBestResponse(
    const ProblemInstance& instance, const MixedStrategy<Scalar>& strategy) {
  BestResponseReport<Scalar> report;
  bool first = true;
  for (int t = 1; t <= instance.horizon; ++t) {
    for (int a = 0; a < instance.num_targets(); ++a) {
      Scalar miss{};
      for (const auto& entry : strategy.support) {
        if (Unprotected(instance, entry.strategy, strategy.unit, a, t)) {
          miss += entry.probability;
        }
      }
      const Scalar payoff =
          ScalarTraits<Scalar>::FromRational(instance.weight(a, t)) * miss;
      if (first || payoff > report.value) {
        report.value = payoff;
        report.target = a;
        report.round = t;
        first = false;
      }
      report.payoffs.emplace(std::make_pair(a, t), payoff);
    }
  }
  return report;
}

Rational PurePayoff(const ProblemInstance& instance,
                    const PureStrategy& strategy, const Rational& unit,
                    int target, int t) {
  return Unprotected(instance, strategy, unit, target, t)
             ? instance.weight(target, t)
             : Rational(0);
}

std::vector<PureStrategy> EnumeratePureStrategies(
    const ProblemInstance& instance, int64_t cap) {
  if (instance.mode != Mode::kDiscrete) {
    throw Error(ErrorCode::kInvalidArgument,
                "enumeration needs a discrete instance");
  }
  const int k_eff = instance.effective_patrols;
  const int horizon = instance.horizon;
  const int64_t top = instance.max_position();
  const int64_t step = instance.max_step();

  // Sorted tuples of the first round alone: C(M + K, K).
  {
    mpz_class count;
    mpz_class n = mpz_class(static_cast<long>(top)) + k_eff;
    mpz_bin_ui(count.get_mpz_t(), n.get_mpz_t(), k_eff);
    if (count > cap) {
      throw Error(ErrorCode::kTooLarge,
                  "more than " + std::to_string(cap) + " schedules");
    }
  }

  std::vector<PureStrategy> out;
  std::vector<std::vector<int64_t>> rounds(horizon,
                                           std::vector<int64_t>(k_eff));

  auto emit = [&]() {
    if (static_cast<int64_t>(out.size()) >= cap) {
      throw Error(ErrorCode::kTooLarge,
                  "more than " + std::to_string(cap) + " schedules");
    }
    PureStrategy s;
    s.paths.assign(k_eff, std::vector<int64_t>(horizon));
    for (int t = 0; t < horizon; ++t) {
      for (int k = 0; k < k_eff; ++k) s.paths[k][t] = rounds[t][k];
    }
    out.push_back(std::move(s));
  };

  // Fill patrol k of round t, then move on.
  std::function<void(int, int)> fill = [&](int t, int k) {
    if (k == k_eff) {
      if (t + 1 == horizon) {
        emit();
      } else {
        fill(t + 1, 0);
      }
      return;
    }
    int64_t lo = k > 0 ? rounds[t][k - 1] : 0;
    int64_t hi = top;
    if (t > 0) {
      lo = std::max(lo, rounds[t - 1][k] - step);
      hi = std::min(hi, rounds[t - 1][k] + step);
    }
    for (int64_t x = lo; x <= hi; ++x) {
      rounds[t][k] = x;
      fill(t, k + 1);
    }
  };
  fill(0, 0);
  return out;
}

Rational MatrixGameValue(const ProblemInstance& instance, int64_t cap) {
  if (instance.mode == Mode::kContinuous) {
    return MatrixGameValue(ScaleInstance(instance).instance, cap);
  }
  const std::vector<PureStrategy> pures =
      EnumeratePureStrategies(instance, cap);
  const int n = instance.num_targets();

  // covered[t - 1][a][x]: a patrol at x protects target a at round t.
  const int64_t top = instance.max_position();
  std::vector<std::vector<std::vector<char>>> covered(
      instance.horizon,
      std::vector<std::vector<char>>(n, std::vector<char>(top + 1)));
  for (int t = 1; t <= instance.horizon; ++t) {
    for (int a = 0; a < n; ++a) {
      for (int64_t x = 0; x <= top; ++x) {
        covered[t - 1][a][x] =
            Protects(x, instance.position(a, t), instance.radius);
      }
    }
  }

  LPModel model;
  std::vector<int> var(pures.size());
  for (size_t p = 0; p < pures.size(); ++p) {
    var[p] = model.AddVariable("p" + std::to_string(p));
  }
  const int u = model.AddVariable("u");
  for (int t = 1; t <= instance.horizon; ++t) {
    for (int a = 0; a < n; ++a) {
      const Rational& w = instance.weight(a, t);
      std::vector<LinearTerm> terms;
      if (sgn(w) != 0) {
        for (size_t p = 0; p < pures.size(); ++p) {
          bool hit = false;
          for (const auto& path : pures[p].paths) {
            if (covered[t - 1][a][path[t - 1]]) {
              hit = true;
              break;
            }
          }
          if (!hit) terms.push_back({var[p], w});
        }
      }
      terms.push_back({u, Rational(-1)});
      model.AddConstraint(std::move(terms), Relation::kLessEqual, 0,
                          "attack_" + std::to_string(a) + "_" +
                              std::to_string(t));
    }
  }
  std::vector<LinearTerm> sum;
  for (int v : var) sum.push_back({v, Rational(1)});
  model.AddConstraint(std::move(sum), Relation::kEqual, 1, "sum");
  model.SetObjective({{u, Rational(1)}});
  return Minimize<Rational>(model).objective;
}

template <typename Scalar>
CheckReport CheckEquilibrium(const ProblemInstance& instance,
                             const Scalar& value,
                             const MixedStrategy<Scalar>& strategy,
                             int64_t cap) {
  CheckReport report;

  {
    CheckEntry c;
    c.name = "probability_sum";
    Scalar total{};
    bool negative = false;
    for (const auto& entry : strategy.support) {
      total += entry.probability;
      if (entry.probability < Scalar(0)) negative = true;
    }
    const Scalar deficit = Scalar(1) - total;
    c.magnitude = Magnitude(deficit);
    c.passed = !negative && Close<Scalar>(total, Scalar(1));
    c.detail = "sum " + Show(total) + ", deficit " + Show(deficit);
    if (negative) c.detail += ", negative probability";
    report.checks.push_back(std::move(c));
  }

  {
    CheckEntry c;
    c.name = "speed_feasibility";
    c.detail = "all support schedules feasible";
    for (size_t i = 0; i < strategy.support.size(); ++i) {
      const PureStrategy& s = strategy.support[i].strategy;
      if (static_cast<int>(s.paths.size()) > instance.patrol_count) {
        c.passed = false;
        c.magnitude = 1;
        c.detail = "support entry " + std::to_string(i) + " uses " +
                   std::to_string(s.paths.size()) + " patrols";
        break;
      }
      if (auto v = FindViolation(s, instance, strategy.unit)) {
        c.passed = false;
        c.magnitude = 1;
        c.detail = "support entry " + std::to_string(i) + ", patrol " +
                   std::to_string(v->patrol) + ", round " +
                   std::to_string(v->round) + ": " + v->what;
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckEntry c;
    c.name = "best_response";
    const auto br = AttackerBestResponse(instance, strategy);
    c.magnitude = Magnitude(Scalar(br.value - value));
    c.passed = Close<Scalar>(br.value, value);
    c.detail = "best response " + Show(br.value) + " at target " +
               std::to_string(br.target) + ", round " +
               std::to_string(br.round) + "; claimed " + Show(value);
    report.checks.push_back(std::move(c));
  }

  {
    CheckEntry c;
    c.name = "matrix_game";
    try {
      const Rational oracle = MatrixGameValue(instance, cap);
      const Scalar mine = ScalarTraits<Scalar>::FromRational(oracle);
      c.magnitude = Magnitude(Scalar(mine - value));
      c.passed = Close<Scalar>(mine, value);
      c.detail = "oracle " + ToString(oracle) + "; claimed " + Show(value);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kTooLarge) throw;
      c.skipped = true;
      c.detail = "skipped: more than " + std::to_string(cap) + " schedules";
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

#define LINEPATROL_INSTANTIATE(S)                                           \
  template BestResponseReport<S> AttackerBestResponse<S>(                  \
      const ProblemInstance&, const MixedStrategy<S>&);                     \
  template CheckReport CheckEquilibrium<S>(                                 \
      const ProblemInstance&, const S&, const MixedStrategy<S>&, int64_t);

LINEPATROL_INSTANTIATE(Rational)
LINEPATROL_INSTANTIATE(double)

#undef LINEPATROL_INSTANTIATE

}  // namespace linepatrol
