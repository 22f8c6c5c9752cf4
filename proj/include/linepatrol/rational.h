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

#ifndef LINEPATROL_RATIONAL_H_
#define LINEPATROL_RATIONAL_H_

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <string_view>

namespace linepatrol {

// Exact arbitrary-precision rational, always kept in lowest terms.
using Rational = mpq_class;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Parses "p/q", "-12", "3.25" or "-0.5" exactly. Throws kParseError.
Rational ParseRational(std::string_view text);

// "p/q" or "p" for integers.
std::string ToString(const Rational& value);

int64_t FloorToInt64(const Rational& value);
int64_t CeilToInt64(const Rational& value);
bool IsInteger(const Rational& value);

inline double ToDouble(const Rational& value) { return value.get_d(); }
inline double ToDouble(double value) { return value; }

// Scalar-generic helpers so templated code can treat Rational and double
// uniformly.
template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static Rational FromRational(const Rational& r) { return r; }
  static bool IsZero(const Rational& v, double /*tol*/) { return sgn(v) == 0; }
  static bool IsPositive(const Rational& v, double /*tol*/) {
    return sgn(v) > 0;
  }
  static Rational Abs(const Rational& v) { return abs(v); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static double FromRational(const Rational& r) { return r.get_d(); }
  static bool IsZero(double v, double tol) { return v <= tol && v >= -tol; }
  static bool IsPositive(double v, double tol) { return v > tol; }
  static double Abs(double v) { return v < 0 ? -v : v; }
};

}  // namespace linepatrol

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // LINEPATROL_RATIONAL_H_
