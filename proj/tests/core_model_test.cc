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

#include <gtest/gtest.h>

#include <random>

#include "linepatrol/error.h"
#include "test_util.h"

namespace linepatrol {
namespace {

using testing::InstanceA;

Rational Q(const char* text) { return ParseRational(text); }

ErrorCode CodeOf(const RawInstance& raw) {
  try {
    ValidateInstance(raw);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kInvalidArgument;
}

RawInstance Base() { return ToRaw(InstanceA()); }

TEST(ProtectsTest, Examples) {
  EXPECT_TRUE(Protects(5, Q("11/2"), Rational(1)));
  EXPECT_TRUE(Protects(5, Rational(5), Rational(0)));
  EXPECT_FALSE(Protects(5, Q("33/5"), Rational(1)));
}

TEST(ProtectsTest, ReflectionSymmetry) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 6);
  for (int i = 0; i < 2000; ++i) {
    const long m = num(rng);
    const Rational pos(num(rng), den(rng));
    const Rational r(std::abs(num(rng)), den(rng));
    const long c = num(rng);
    EXPECT_EQ(Protects(m, pos, r),
              Protects(-m + 2 * c, -pos + 2 * c, r));
  }
}

TEST(EffectivePatrolsTest, Examples) {
  EXPECT_EQ(EffectivePatrolCount(3, 2, 4), 3);
  EXPECT_EQ(EffectivePatrolCount(100, 2, 4), 8);
  EXPECT_EQ(EffectivePatrolCount(8, 2, 4), 8);
}

TEST(EffectivePatrolsTest, NeverExceedsEitherBound) {
  for (int k = 1; k < 20; ++k) {
    for (int n = 1; n < 6; ++n) {
      for (int t = 1; t < 6; ++t) {
        const int64_t e = EffectivePatrolCount(k, n, t);
        EXPECT_LE(e, k);
        EXPECT_LE(e, n * t);
      }
    }
  }
}

TEST(ValidateTest, InstanceAIsValid) {
  const ProblemInstance inst = InstanceA();
  EXPECT_EQ(inst.horizon, 1);
  EXPECT_EQ(inst.space_max, 2);
  EXPECT_EQ(inst.effective_patrols, 1);
  EXPECT_EQ(inst.num_targets(), 2);
  EXPECT_EQ(inst.position(1, 1), 2);
}

TEST(ValidateTest, CapsPatrols) {
  RawInstance raw = Base();
  raw.horizon = 2;
  raw.patrol_count = 10;
  raw.targets.resize(1);
  raw.targets[0].positions = {0, 1};
  raw.targets[0].weights = {1, 1};
  const ProblemInstance inst = ValidateInstance(raw);
  EXPECT_EQ(inst.patrol_count, 10);
  EXPECT_EQ(inst.effective_patrols, 2);
}

TEST(ValidateTest, Errors) {
  RawInstance raw = Base();
  raw.targets[1].weights[0] = -1;
  EXPECT_EQ(CodeOf(raw), ErrorCode::kNegativeWeight);

  raw = Base();
  raw.targets[0].positions.push_back(1);
  EXPECT_EQ(CodeOf(raw), ErrorCode::kTrackLengthMismatch);

  raw = Base();
  raw.targets[0].weights.clear();
  EXPECT_EQ(CodeOf(raw), ErrorCode::kTrackLengthMismatch);

  raw = Base();
  raw.horizon = 0;
  EXPECT_EQ(CodeOf(raw), ErrorCode::kZeroHorizon);

  raw = Base();
  raw.radius = -1;
  EXPECT_EQ(CodeOf(raw), ErrorCode::kNegativeParameter);

  raw = Base();
  raw.speed = Q("-1/2");
  EXPECT_EQ(CodeOf(raw), ErrorCode::kNegativeParameter);

  raw = Base();
  raw.space_max = -3;
  EXPECT_EQ(CodeOf(raw), ErrorCode::kNegativeParameter);

  raw = Base();
  raw.patrol_count = 0;
  EXPECT_EQ(CodeOf(raw), ErrorCode::kNegativeParameter);

  raw = Base();
  raw.targets.clear();
  EXPECT_EQ(CodeOf(raw), ErrorCode::kNoTargets);
}

TEST(ValidateTest, MessageNamesField) {
  RawInstance raw = Base();
  raw.targets[1].weights[0] = -1;
  try {
    ValidateInstance(raw);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("targets[1].weights[0]"),
              std::string::npos)
        << e.what();
  }
}

TEST(ValidateTest, RationalParameters) {
  RawInstance raw = Base();
  raw.speed = Q("7/3");
  raw.radius = Q("1/2");
  const ProblemInstance inst = ValidateInstance(raw);
  EXPECT_EQ(inst.max_step(), 2);
  EXPECT_EQ(inst.max_position(), 2);
}

TEST(ValidateTest, TargetsOutsideLineAllowed) {
  RawInstance raw = Base();
  raw.targets[0].positions[0] = -5;
  raw.targets[1].positions[0] = Q("17/2");
  EXPECT_NO_THROW(ValidateInstance(raw));
}

TEST(ValidateTest, RoundTripThroughRaw) {
  const ProblemInstance inst = InstanceA();
  EXPECT_EQ(ValidateInstance(ToRaw(inst)), inst);
}

TEST(FindViolationTest, Detects) {
  RawInstance raw = Base();
  raw.horizon = 3;
  raw.speed = Q("3/2");
  for (auto& track : raw.targets) {
    track.positions.assign(3, track.positions[0]);
    track.weights.assign(3, Rational(1));
  }
  const ProblemInstance inst = ValidateInstance(raw);
  EXPECT_FALSE(FindViolation(PureStrategy{{{0, 1, 2}}}, inst).has_value());

  auto v = FindViolation(PureStrategy{{{0, 1, 2}, {0, 2, 2}}}, inst);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->patrol, 1);
  EXPECT_EQ(v->round, 1);

  // The move 1 -> 3 is caught before position 3 leaves [0, 2].
  v = FindViolation(PureStrategy{{{0, 1, 3}}}, inst);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->round, 2);

  v = FindViolation(PureStrategy{{{0, 1, 3}}}, ValidateInstance([&] {
                      RawInstance wide = raw;
                      wide.speed = 2;
                      return wide;
                    }()));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->round, 3);

  v = FindViolation(PureStrategy{{{0, 1}}}, inst);
  ASSERT_TRUE(v.has_value());

  // Half units: 3 * 1/2 = 3/2 is a legal move in continuous mode only.
  raw.mode = Mode::kContinuous;
  const ProblemInstance cont = ValidateInstance(raw);
  EXPECT_FALSE(
      FindViolation(PureStrategy{{{0, 3, 4}}}, cont, Q("1/2")).has_value());
  EXPECT_TRUE(FindViolation(PureStrategy{{{0, 3, 4}}}, inst, Q("1/2")));
}

}  // namespace
}  // namespace linepatrol
