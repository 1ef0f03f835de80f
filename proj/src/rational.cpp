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

#include "tldg/rational.hpp"

#include <cctype>

namespace tldg {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> ParseRational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!AllDigits(num) || !AllDigits(den)) return std::nullopt;
  const Integer p{std::string(num)};
  const Integer q{std::string(den)};
  if (q == 0) return std::nullopt;
  Rational r(p, q);
  return negative ? Rational(-r) : r;
}

std::string ToString(const Rational& value) {
  // mpq_get_str prints `p/q`, or just `p` when the denominator is 1.
  return value.str();
}

double ToDouble(const Rational& value) { return value.convert_to<double>(); }

bool IsCanonical(const Rational& value) {
  const Integer p = boost::multiprecision::numerator(value);
  const Integer q = boost::multiprecision::denominator(value);
  if (q <= 0) return false;
  return boost::multiprecision::gcd(p, q) == 1;
}

}  // namespace tldg
