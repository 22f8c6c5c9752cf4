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

// Game model: a defender with K homogeneous patrols moving on the integer
// line [0, M] at speed at most D protects targets within radius R; the
// attacker picks a single (target, round) pair and gains the target weight
// when it is unprotected.

#ifndef LINEPATROL_CORE_MODEL_H_
#define LINEPATROL_CORE_MODEL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linepatrol/rational.h"

namespace linepatrol {

enum class Mode { kDiscrete, kContinuous };

struct TargetTrack {
  int id = 0;
  // Entry t - 1 holds the value for round t.
  std::vector<Rational> positions;
  std::vector<Rational> weights;

  friend bool operator==(const TargetTrack&, const TargetTrack&) = default;
};

// Unvalidated instance data, as read from a document or built by hand.
struct RawInstance {
  int64_t horizon = 0;
  Rational space_max;
  int64_t patrol_count = 0;
  Rational speed;
  Rational radius;
  std::vector<TargetTrack> targets;
  Mode mode = Mode::kDiscrete;
};

// A validated game instance. Rounds are indexed 1..horizon.
struct ProblemInstance {
  int horizon = 0;
  Rational space_max;
  int patrol_count = 0;
  // min(patrol_count, n * horizon); more patrols than that never help.
  int effective_patrols = 0;
  Rational speed;
  Rational radius;
  std::vector<TargetTrack> targets;
  Mode mode = Mode::kDiscrete;

  int num_targets() const { return static_cast<int>(targets.size()); }
  // Largest integer patrol position (discrete model).
  int64_t max_position() const;
  // floor(D): the largest integer move per round.
  int64_t max_step() const;
  const Rational& position(int target, int t) const {
    return targets[target].positions[t - 1];
  }
  const Rational& weight(int target, int t) const {
    return targets[target].weights[t - 1];
  }

  friend bool operator==(const ProblemInstance&,
                         const ProblemInstance&) = default;
};

// K patrol paths; paths[k][t - 1] is the position of patrol k at round t,
// measured in units of the owning MixedStrategy's `unit`.
struct PureStrategy {
  std::vector<std::vector<int64_t>> paths;

  friend bool operator==(const PureStrategy&, const PureStrategy&) = default;
};

template <typename Scalar>
struct MixedStrategy {
  struct Entry {
    PureStrategy strategy;
    Scalar probability;
  };
  std::vector<Entry> support;
  // Real position = stored integer * unit. 1 for discrete instances.
  Rational unit = 1;
};

// |pos - m| <= R, exactly.
bool Protects(const Rational& m, const Rational& pos, const Rational& radius);
inline bool Protects(int64_t m, const Rational& pos, const Rational& radius) {
  return Protects(Rational(static_cast<long>(m)), pos, radius);
}

int64_t EffectivePatrolCount(int64_t patrol_count, int64_t num_targets,
                             int64_t horizon);

// Checks the raw data and applies the patrol cap. Throws Error with
// kNegativeWeight, kTrackLengthMismatch, kZeroHorizon, kNegativeParameter or
// kNoTargets; the message names the offending field.
ProblemInstance ValidateInstance(const RawInstance& raw);

RawInstance ToRaw(const ProblemInstance& instance);

struct StrategyViolation {
  int patrol = 0;
  int round = 0;  // 1-based; the move from `round` to `round + 1` for speed
  std::string what;
};

// First speed or bounds violation of `strategy`, if any.
std::optional<StrategyViolation> FindViolation(const PureStrategy& strategy,
                                               const ProblemInstance& instance,
                                               const Rational& unit = 1);

}  // namespace linepatrol

#endif  // LINEPATROL_CORE_MODEL_H_
