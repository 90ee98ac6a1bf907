// Copyright 2026 The Semigame Authors
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

#pragma once

#include <gmpxx.h>

#include <cstdio>
#include <string>

#include "semigame/common.hpp"

namespace semigame {

// Exact arbitrary-precision rational.  All arithmetic results are kept in
// canonical form (positive denominator, coprime), so equality is structural.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  require(den != 0, "rational denominator must be nonzero");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "num/den" or a bare integer "num".
inline Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw input_error("empty rational literal");
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw input_error("malformed rational literal: '" + text + "'");
  }
  require(sgn(q.get_den()) != 0, "rational literal has zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

// Always renders the explicit "num/den" form, e.g. "4/3", "0/1", "-2/1".
inline std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

// 17 significant digits: enough for bit-exact double round trips.
inline std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

}  // namespace semigame
