// Copyright 2026 The TLDG Authors.
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

#ifndef TLDG_RATIONAL_HPP_
#define TLDG_RATIONAL_HPP_

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace tldg {

// Arbitrary-precision rational backed by GMP's mpq_t. Every arithmetic
// result is kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Parses `p/q` or a bare integer `p`, with an optional leading minus sign.
// Returns nullopt on malformed input or a zero denominator.
std::optional<Rational> ParseRational(std::string_view text);

// Canonical text form: `p/q` in lowest terms, or `p` when q == 1.
std::string ToString(const Rational& value);

double ToDouble(const Rational& value);

// True iff the value is stored in reduced form with a positive denominator.
bool IsCanonical(const Rational& value);

}  // namespace tldg

#endif  // TLDG_RATIONAL_HPP_
