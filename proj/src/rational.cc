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

#include "linepatrol/rational.h"

#include <cctype>
#include <limits>

#include "linepatrol/error.h"

namespace linepatrol {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kTrackLengthMismatch: return "TrackLengthMismatch";
    case ErrorCode::kZeroHorizon: return "ZeroHorizon";
    case ErrorCode::kNegativeParameter: return "NegativeParameter";
    case ErrorCode::kNoTargets: return "NoTargets";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kEmptyFeasibleSet: return "EmptyFeasibleSet";
    case ErrorCode::kUnsortedSnapshot: return "UnsortedSnapshot";
    case ErrorCode::kProbabilitySumMismatch: return "ProbabilitySumMismatch";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kUnbounded: return "Unbounded";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kExhaustedFlow: return "ExhaustedFlow";
    case ErrorCode::kIncompatibleTopPaths: return "IncompatibleTopPaths";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void Fail(std::string_view text) {
  throw Error(ErrorCode::kParseError,
              "not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) Fail(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) Fail(text);
    result = Rational(mpz_class(std::string(num), 10), d);
    result.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) Fail(text);
    if (!whole.empty() && !AllDigits(whole)) Fail(text);
    if (!frac.empty() && !AllDigits(frac)) Fail(text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole.empty() ? "0" : whole) +
                         std::string(frac),
                     10);
    result = Rational(digits, scale);
    result.canonicalize();
  } else {
    if (!AllDigits(s)) Fail(text);
    result = Rational(mpz_class(std::string(s), 10));
  }
  return negative ? Rational(-result) : result;
}

std::string ToString(const Rational& value) { return value.get_str(10); }

bool IsInteger(const Rational& value) { return value.get_den() == 1; }

int64_t FloorToInt64(const Rational& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  if (!q.fits_slong_p()) {
    throw Error(ErrorCode::kInvalidArgument,
                "value out of 64-bit range: " + ToString(value));
  }
  return q.get_si();
}

int64_t CeilToInt64(const Rational& value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  if (!q.fits_slong_p()) {
    throw Error(ErrorCode::kInvalidArgument,
                "value out of 64-bit range: " + ToString(value));
  }
  return q.get_si();
}

}  // namespace linepatrol
