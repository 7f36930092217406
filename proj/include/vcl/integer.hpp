// Copyright 2026 The vcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

namespace vcl {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A caller-visible precondition was not met.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  AlphabetMismatch(int lhs, int rhs)
      : Error("alphabet mismatch: rank " + std::to_string(lhs) + " vs rank " +
              std::to_string(rhs)) {}
};

/// A search exceeded its configured candidate or wall-clock budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline int sign(const Integer& x) { return x.sign(); }

inline std::optional<std::int64_t> to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return x.convert_to<std::int64_t>();
}

/// Converts a count that must be small enough to loop over.
inline std::uint64_t to_count(const Integer& x, const char* what = "count") {
  if (x < 0 || x > Integer(std::numeric_limits<std::uint64_t>::max() / 4)) {
    throw Error(std::string(what) + " out of range: " + x.str());
  }
  return x.convert_to<std::uint64_t>();
}

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

struct ExtendedGcd {
  Integer g;
  Integer x;
  Integer y;
};

/// g = gcd(a, b) >= 0 and a*x + b*y = g.
inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, Integer(old_r - q * r));
    std::tie(old_s, s) = std::make_tuple(s, Integer(old_s - q * s));
    std::tie(old_t, t) = std::make_tuple(t, Integer(old_t - q * t));
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

/// Floor (a/b) for b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace vcl
