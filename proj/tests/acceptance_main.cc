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

// Release gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "invariant_checks.h"
#include "linepatrol/continuous.h"
#include "linepatrol/equilibrium.h"
#include "linepatrol/verify.h"
#include "test_util.h"

namespace linepatrol {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

struct Solved {
  ProblemInstance instance;
  EquilibriumResult<Rational> result;
};

std::vector<ProblemInstance> OracleInstances() {
  std::mt19937_64 rng(1001);
  testing::RandomLimits lim;  // T <= 3, M <= 6, K <= 2, n <= 2, w in 1..3
  std::vector<ProblemInstance> out;
  for (int i = 0; i < 60; ++i) out.push_back(testing::RandomDiscrete(rng, lim));
  return out;
}

std::vector<ProblemInstance> CertificateInstances() {
  std::mt19937_64 rng(1002);
  testing::RandomLimits lim;
  lim.max_horizon = 6;
  lim.max_space = 50;
  lim.max_patrols = 3;
  lim.max_targets = 4;
  lim.max_speed = 10;
  lim.max_radius = 5;
  std::vector<ProblemInstance> out;
  for (int i = 0; i < 110; ++i) {
    out.push_back(testing::RandomDiscrete(rng, lim));
  }
  return out;
}

Outcome OracleEquivalence(const std::vector<ProblemInstance>& instances,
                          std::vector<Solved>& solved) {
  Outcome o;
  const auto start = Clock::now();
  for (size_t i = 0; i < instances.size(); ++i) {
    auto result = Solve<Rational>(instances[i]);
    const Rational oracle = MatrixGameValue(instances[i]);
    if (result.value != oracle) {
      o.Fail("instance " + std::to_string(i) + ": solver " +
             ToString(result.value) + ", oracle " + ToString(oracle));
    }
    solved.push_back({instances[i], std::move(result)});
  }
  const double secs = Seconds(start);
  if (secs >= 120) o.Fail("took " + std::to_string(secs) + " s");
  if (o.passed) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%zu instances equal the oracle, %.1f s",
                  instances.size(), secs);
    o.detail = buf;
  }
  return o;
}

template <typename Scalar>
std::string CertificateProblem(const ProblemInstance& inst,
                               const EquilibriumResult<Scalar>& result) {
  Scalar total{};
  for (const auto& e : result.strategy.support) {
    if (e.probability < Scalar(0)) return "negative probability";
    total += e.probability;
    if (auto v = FindViolation(e.strategy, inst, result.strategy.unit)) {
      return "patrol " + std::to_string(v->patrol) + " round " +
             std::to_string(v->round) + ": " + v->what;
    }
  }
  const Scalar br = AttackerBestResponse(inst, result.strategy).value;
  if constexpr (ScalarTraits<Scalar>::kExact) {
    if (total != 1) return "probabilities sum to " + ToString(total);
    if (br != result.value) {
      return "best response " + ToString(br) + " vs " + ToString(result.value);
    }
  } else {
    if (std::fabs(total - 1) > 1e-6) return "probabilities off by 1e-6";
    if (std::fabs(br - result.value) > 1e-6) {
      return "best response " + std::to_string(br) + " vs " +
             std::to_string(result.value);
    }
  }
  return "";
}

Outcome MinimaxCertificate(const std::vector<ProblemInstance>& instances,
                           std::vector<Solved>& solved) {
  Outcome o;
  for (size_t i = 0; i < instances.size(); ++i) {
    auto exact = Solve<Rational>(instances[i]);
    std::string why = CertificateProblem(instances[i], exact);
    if (!why.empty()) o.Fail("instance " + std::to_string(i) + " exact: " + why);
    const auto approx = Solve<double>(instances[i]);
    why = CertificateProblem(instances[i], approx);
    if (!why.empty()) o.Fail("instance " + std::to_string(i) + " float: " + why);
    solved.push_back({instances[i], std::move(exact)});
  }
  if (o.passed) {
    o.detail = std::to_string(instances.size()) +
               " instances, exact and float certificates hold";
  }
  return o;
}

Outcome WideLine() {
  Outcome o;
  testing::Spec s;
  s.horizon = 5;
  s.space_max = 1'000'000'000;
  s.patrols = 2;
  s.speed = 123'456'789;
  s.radius = 20'000'000;
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<long> pos(0, 1'000'000'000);
  for (int a = 0; a < 3; ++a) {
    std::vector<Rational> track;
    for (int t = 0; t < 5; ++t) track.emplace_back(pos(rng));
    s.positions.push_back(track);
  }
  const ProblemInstance inst = testing::Make(s);
  const auto start = Clock::now();
  const auto result = Solve<Rational>(inst);
  const double secs = Seconds(start);
  const int64_t bound = testing::IntervalBound(inst);
  if (secs >= 30) o.Fail("took " + std::to_string(secs) + " s");
  if (result.stats.total_intervals > bound) {
    o.Fail(std::to_string(result.stats.total_intervals) +
           " intervals above bound " + std::to_string(bound));
  }
  const std::string why = CertificateProblem(inst, result);
  if (!why.empty()) o.Fail(why);
  if (o.passed) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "M=1e9 solved in %.1f s, value %s, %d intervals <= %lld",
                  secs, ToString(result.value).c_str(),
                  result.stats.total_intervals,
                  static_cast<long long>(bound));
    o.detail = buf;
  }
  return o;
}

Outcome Uncrossing(const std::vector<Solved>& solved) {
  Outcome o;
  int rounds = 0;
  for (size_t i = 0; i < solved.size(); ++i) {
    const ProblemInstance& inst = solved[i].instance;
    const PartitionSet parts = BuildPartitions(inst);
    const auto graphs = BuildDayGraphs(inst, parts);
    const auto lp = SolveCompactLp<Rational>(inst, parts, graphs);
    for (size_t t = 0; t < graphs.size(); ++t, ++rounds) {
      const std::string why = testing::CheckUncrossing(graphs[t], lp.flows[t]);
      if (!why.empty()) {
        o.Fail("solved instance " + std::to_string(i) + " round " +
               std::to_string(t + 1) + ": " + why);
      }
    }
  }

  // Random mixtures on full grids until 100 of them actually cross.
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<int> dim(2, 6), mass(1, 5);
  int crossing = 0, attempts = 0;
  while (crossing < 100 && attempts < 10'000) {
    ++attempts;
    testing::Spec s;
    const int rows = dim(rng);
    s.space_max = rows - 1;
    s.patrols = dim(rng);
    for (int y = 0; y < rows; ++y) s.positions.push_back({Rational(y)});
    const ProblemInstance inst = testing::Make(s);
    const DayGraph g = BuildDayGraph(inst, BuildPartitions(inst), 1);
    std::vector<WeightedSnapshot<Rational>> mix;
    Rational total = 0;
    const int size = dim(rng);
    for (int j = 0; j < size; ++j) {
      const int m = mass(rng);
      mix.push_back({testing::RandomSnapshot(rng, g.rows, g.columns),
                     Rational(m)});
      total += m;
    }
    for (auto& m : mix) m.probability /= total;
    const EdgeFlow<Rational> flow = MixedToFlow(g, mix);
    if (!FindNextCross(g, flow)) continue;
    ++crossing;
    const std::string why = testing::CheckUncrossing(g, flow);
    if (!why.empty()) o.Fail("synthetic flow " + std::to_string(crossing) +
                             ": " + why);
  }
  if (crossing < 100) o.Fail("only " + std::to_string(crossing) +
                             " synthetic crossing flows generated");
  if (o.passed) {
    o.detail = std::to_string(rounds) + " solved rounds and " +
               std::to_string(crossing) + " synthetic crossing flows";
  }
  return o;
}

Outcome PartitionInvariants() {
  Outcome o;
  std::mt19937_64 rng(1005);
  testing::RandomLimits lim;
  lim.max_horizon = 4;
  lim.max_space = 200;
  lim.max_targets = 4;
  lim.max_speed = 15;
  lim.max_radius = 10;
  int count = 0;
  for (int i = 0; i < 60; ++i, ++count) {
    const std::string why =
        testing::CheckPartitionInvariants(testing::RandomDiscrete(rng, lim));
    if (!why.empty()) o.Fail("integer instance " + std::to_string(i) + ": " + why);
  }
  auto pick = [&](int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
  };
  for (int i = 0; i < 40; ++i, ++count) {
    testing::Spec s;
    s.horizon = pick(1, 4);
    s.space_max = pick(1, 200);
    const long den = static_cast<long>(pick(2, 5));
    s.speed = Rational(static_cast<long>(pick(0, 15 * den)), den);
    s.radius = Rational(static_cast<long>(pick(0, 10 * den)), den);
    const int n = static_cast<int>(pick(1, 4));
    const int64_t top = FloorToInt64(s.space_max);
    for (int a = 0; a < n; ++a) {
      std::vector<Rational> track;
      for (int t = 0; t < s.horizon; ++t) {
        track.push_back(Rational(
            static_cast<long>(pick(-5 * den, (top + 5) * den)), den));
      }
      s.positions.push_back(track);
    }
    const std::string why = testing::CheckPartitionInvariants(testing::Make(s));
    if (!why.empty()) {
      o.Fail("fractional instance " + std::to_string(i) + ": " + why);
    }
  }
  if (o.passed) {
    o.detail = std::to_string(count) +
               " instances: coverage, protection and move uniformity, "
               "contiguous feasible sets";
  }
  return o;
}

Outcome DayGraphInvariants() {
  Outcome o;
  std::mt19937_64 rng(1006);
  testing::RandomLimits lim;
  lim.max_horizon = 3;
  lim.max_space = 50;
  lim.max_patrols = 3;
  lim.max_targets = 4;
  lim.max_speed = 8;
  lim.max_radius = 4;
  lim.allow_zero_weight = true;
  for (int i = 0; i < 60; ++i) {
    const std::string why = testing::CheckDayGraphInvariants(
        testing::RandomDiscrete(rng, lim), rng, 40);
    if (!why.empty()) o.Fail("instance " + std::to_string(i) + ": " + why);
  }
  if (o.passed) {
    o.detail = "60 instances, 40 snapshots and 40 mixtures per round";
  }
  return o;
}

Outcome Decomposition(const std::vector<Solved>& solved) {
  Outcome o;
  for (size_t i = 0; i < solved.size(); ++i) {
    const std::string why =
        testing::CheckDecomposition(solved[i].instance, solved[i].result);
    if (!why.empty()) o.Fail("instance " + std::to_string(i) + ": " + why);
  }
  if (o.passed) {
    o.detail = std::to_string(solved.size()) +
               " solved instances reproduce their flows";
  }
  return o;
}

Outcome ContinuousReduction() {
  Outcome o;
  std::mt19937_64 rng(1008);
  auto pick = [&](int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
  };
  const int count = 40;
  for (int i = 0; i < count; ++i) {
    testing::Spec s;
    s.mode = Mode::kContinuous;
    s.horizon = pick(1, 3);
    s.patrols = pick(1, 2);
    auto frac = [&](int64_t max_num) {
      return Rational(static_cast<long>(pick(0, max_num)),
                      static_cast<long>(pick(1, 4)));
    };
    s.space_max = frac(12);
    s.speed = frac(6);
    s.radius = frac(3);
    const int n = static_cast<int>(pick(1, 3));
    for (int a = 0; a < n; ++a) {
      std::vector<Rational> track, w;
      for (int t = 0; t < s.horizon; ++t) {
        track.push_back(frac(14) - 1);
        w.emplace_back(static_cast<long>(pick(1, 3)));
      }
      s.positions.push_back(track);
      s.weights.push_back(w);
    }
    const ProblemInstance inst = testing::Make(s);
    const std::string tag = "instance " + std::to_string(i) + ": ";
    const ScaledInstance scaled = ScaleInstance(inst);
    const auto cont = SolveContinuous<Rational>(inst);
    const auto disc = Solve<Rational>(scaled.instance);
    if (cont.value != disc.value) {
      o.Fail(tag + "value " + ToString(cont.value) + " vs scaled " +
             ToString(disc.value));
    }
    const Rational m(scaled.factor);
    for (const auto& e : cont.strategy.support) {
      for (const auto& path : e.strategy.paths) {
        for (int64_t p : path) {
          const Rational real =
              Rational(static_cast<long>(p)) * cont.strategy.unit;
          if (!IsInteger(real * m)) o.Fail(tag + "position off the 1/m grid");
          if (sgn(real) < 0 || real > inst.space_max) {
            o.Fail(tag + "position outside [0, M]");
          }
        }
      }
    }
    const std::string why = CertificateProblem(inst, cont);
    if (!why.empty()) o.Fail(tag + why);
  }
  if (o.passed) {
    o.detail = std::to_string(count) +
               " continuous instances match their scaled solves";
  }
  return o;
}

// With K = nT every protectable (target, round) gets its own patrol, so only
// targets farther than R from [0, M] can still be hit.
Rational ExposedWeight(const ProblemInstance& inst) {
  Rational worst = 0;
  for (const TargetTrack& target : inst.targets) {
    for (int t = 0; t < inst.horizon; ++t) {
      const Rational& x = target.positions[t];
      const bool reachable = x >= -inst.radius &&
                             x <= Rational(inst.space_max) + inst.radius;
      if (!reachable && target.weights[t] > worst) worst = target.weights[t];
    }
  }
  return worst;
}

Outcome FullCoverage() {
  Outcome o;
  std::mt19937_64 rng(1009);
  auto pick = [&](int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
  };
  int reachable = 0, exposed = 0;
  for (int i = 0; reachable < 40 || exposed < 10; ++i) {
    if (i >= 1000) {
      o.Fail("generator produced too few instances of one kind");
      break;
    }
    testing::Spec s;
    s.horizon = pick(1, 4);
    s.space_max = pick(1, 30);
    s.speed = pick(0, 5);
    s.radius = pick(0, 3);
    const int n = static_cast<int>(pick(1, 2));
    s.patrols = n * s.horizon;
    // Mostly inside the line, sometimes well beyond it.
    const bool wide = pick(0, 3) == 0;
    const int64_t top = FloorToInt64(s.space_max);
    for (int a = 0; a < n; ++a) {
      std::vector<Rational> track, w;
      for (int t = 0; t < s.horizon; ++t) {
        const int64_t x = wide ? pick(-10, top + 10) : pick(0, top);
        track.emplace_back(static_cast<long>(x));
        w.emplace_back(static_cast<long>(pick(1, 5)));
      }
      s.positions.push_back(track);
      s.weights.push_back(w);
    }
    const ProblemInstance inst = testing::Make(s);
    const Rational expected = ExposedWeight(inst);
    (expected == 0 ? reachable : exposed)++;
    const auto result = Solve<Rational>(inst);
    if (result.value != expected) {
      o.Fail("instance " + std::to_string(i) + ": value " +
             ToString(result.value) + ", expected " + ToString(expected));
    }
  }
  if (o.passed) {
    o.detail = "K = nT: " + std::to_string(reachable) +
               " fully reachable instances have value 0, " +
               std::to_string(exposed) +
               " with out-of-range targets equal the largest exposed weight";
  }
  return o;
}

}  // namespace
}  // namespace linepatrol

int main() {
  using namespace linepatrol;
  std::vector<Solved> solved;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> gates = {
      {"1 oracle equivalence",
       [&] { return OracleEquivalence(OracleInstances(), solved); }},
      {"2 minimax certificate",
       [&] { return MinimaxCertificate(CertificateInstances(), solved); }},
      {"3 wide line scaling", [] { return WideLine(); }},
      {"4 uncrossing", [&] { return Uncrossing(solved); }},
      {"5 partition invariants", [] { return PartitionInvariants(); }},
      {"6 day graph invariants", [] { return DayGraphInvariants(); }},
      {"7 decomposition fidelity", [&] { return Decomposition(solved); }},
      {"8 continuous reduction", [] { return ContinuousReduction(); }},
      {"9 full coverage", [] { return FullCoverage(); }},
  };
  bool all = true;
  for (const auto& [name, run] : gates) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.Fail(std::string("exception: ") + e.what());
    }
    all = all && o.passed;
    std::printf("%s  %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
