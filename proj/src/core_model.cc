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

#include "linepatrol/core_model.h"

#include <algorithm>
#include <limits>

#include "linepatrol/error.h"

namespace linepatrol {

int64_t ProblemInstance::max_position() const {
  return FloorToInt64(space_max);
}

int64_t ProblemInstance::max_step() const { return FloorToInt64(speed); }

bool Protects(const Rational& m, const Rational& pos, const Rational& radius) {
  return abs(pos - m) <= radius;
}

int64_t EffectivePatrolCount(int64_t patrol_count, int64_t num_targets,
                             int64_t horizon) {
  return std::min(patrol_count, num_targets * horizon);
}

ProblemInstance ValidateInstance(const RawInstance& input) {
  // Hand-built rationals may not be in lowest terms.
  RawInstance raw = input;
  raw.space_max.canonicalize();
  raw.speed.canonicalize();
  raw.radius.canonicalize();
  for (TargetTrack& track : raw.targets) {
    for (Rational& x : track.positions) x.canonicalize();
    for (Rational& w : track.weights) w.canonicalize();
  }
  if (raw.horizon <= 0) {
    throw Error(ErrorCode::kZeroHorizon, "T must be at least 1");
  }
  if (raw.horizon > std::numeric_limits<int>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "T is too large");
  }
  if (sgn(raw.space_max) < 0) {
    throw Error(ErrorCode::kNegativeParameter, "M must be non-negative");
  }
  if (raw.mode == Mode::kDiscrete && !IsInteger(raw.space_max)) {
    throw Error(ErrorCode::kInvalidArgument,
                "M must be an integer in discrete mode");
  }
  if (raw.patrol_count <= 0) {
    throw Error(ErrorCode::kNegativeParameter, "K must be positive");
  }
  if (sgn(raw.speed) < 0) {
    throw Error(ErrorCode::kNegativeParameter, "D must be non-negative");
  }
  if (sgn(raw.radius) < 0) {
    throw Error(ErrorCode::kNegativeParameter, "R must be non-negative");
  }
  if (raw.targets.empty()) {
    throw Error(ErrorCode::kNoTargets, "targets must not be empty");
  }
  for (size_t a = 0; a < raw.targets.size(); ++a) {
    const TargetTrack& track = raw.targets[a];
    const std::string where = "targets[" + std::to_string(a) + "]";
    if (track.positions.size() != static_cast<size_t>(raw.horizon)) {
      throw Error(ErrorCode::kTrackLengthMismatch,
                  where + ".positions has " +
                      std::to_string(track.positions.size()) +
                      " entries, expected " + std::to_string(raw.horizon));
    }
    if (track.weights.size() != static_cast<size_t>(raw.horizon)) {
      throw Error(ErrorCode::kTrackLengthMismatch,
                  where + ".weights has " +
                      std::to_string(track.weights.size()) +
                      " entries, expected " + std::to_string(raw.horizon));
    }
    for (size_t t = 0; t < track.weights.size(); ++t) {
      if (sgn(track.weights[t]) < 0) {
        throw Error(ErrorCode::kNegativeWeight,
                    where + ".weights[" + std::to_string(t) + "] = " +
                        ToString(track.weights[t]));
      }
    }
  }
  // Positions and move bounds must fit comfortably in 64 bits.
  FloorToInt64(raw.space_max);
  FloorToInt64(raw.speed);

  ProblemInstance instance;
  instance.horizon = static_cast<int>(raw.horizon);
  instance.space_max = raw.space_max;
  const int64_t n = static_cast<int64_t>(raw.targets.size());
  instance.patrol_count = static_cast<int>(
      std::min<int64_t>(raw.patrol_count, std::numeric_limits<int>::max()));
  instance.effective_patrols =
      static_cast<int>(EffectivePatrolCount(raw.patrol_count, n, raw.horizon));
  instance.speed = raw.speed;
  instance.radius = raw.radius;
  instance.targets = raw.targets;
  instance.mode = raw.mode;
  return instance;
}

RawInstance ToRaw(const ProblemInstance& instance) {
  RawInstance raw;
  raw.horizon = instance.horizon;
  raw.space_max = instance.space_max;
  raw.patrol_count = instance.patrol_count;
  raw.speed = instance.speed;
  raw.radius = instance.radius;
  raw.targets = instance.targets;
  raw.mode = instance.mode;
  return raw;
}

std::optional<StrategyViolation> FindViolation(const PureStrategy& strategy,
                                               const ProblemInstance& instance,
                                               const Rational& unit) {
  for (size_t k = 0; k < strategy.paths.size(); ++k) {
    const auto& path = strategy.paths[k];
    const int patrol = static_cast<int>(k);
    if (path.size() != static_cast<size_t>(instance.horizon)) {
      return StrategyViolation{patrol, 0,
                               "path has " + std::to_string(path.size()) +
                                   " positions, expected " +
                                   std::to_string(instance.horizon)};
    }
    for (size_t t = 0; t < path.size(); ++t) {
      const Rational pos = Rational(static_cast<long>(path[t])) * unit;
      if (sgn(pos) < 0 || pos > instance.space_max) {
        return StrategyViolation{patrol, static_cast<int>(t) + 1,
                                 "position " + ToString(pos) +
                                     " outside [0, M]"};
      }
      if (instance.mode == Mode::kDiscrete && !IsInteger(pos)) {
        return StrategyViolation{patrol, static_cast<int>(t) + 1,
                                 "position " + ToString(pos) +
                                     " is not an integer"};
      }
      if (t + 1 < path.size()) {
        const Rational step =
            abs(Rational(static_cast<long>(path[t + 1] - path[t])) * unit);
        if (step > instance.speed) {
          return StrategyViolation{patrol, static_cast<int>(t) + 1,
                                   "move of " + ToString(step) +
                                       " exceeds speed " +
                                       ToString(instance.speed)};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace linepatrol
