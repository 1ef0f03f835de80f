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

// Exact rational linear algebra: fraction-free Gaussian elimination and a
// dense two-phase simplex method.

#ifndef TLDG_EXACT_LINEAR_HPP_
#define TLDG_EXACT_LINEAR_HPP_

#include <cstddef>
#include <vector>

#include "tldg/errors.hpp"
#include "tldg/rational.hpp"

namespace tldg {

using RationalMatrix = std::vector<std::vector<Rational>>;

class SingularSystem : public InternalInconsistency {
 public:
  using InternalInconsistency::InternalInconsistency;
};

// Solves the square system a·x = b exactly. Rows are scaled to integers and
// reduced with Bareiss' fraction-free elimination, so intermediate entries
// stay integral and bounded by minors of the scaled matrix. The pivot in each
// column is the nonzero candidate of smallest bit length.
// Throws SingularSystem when a is singular.
std::vector<Rational> SolveLinearSystem(const RationalMatrix& a,
                                        const std::vector<Rational>& b);

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LinearConstraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::kEqual;
  Rational rhs;
};

// minimize objective·x  subject to constraints and x >= 0.
struct LinearProgram {
  std::size_t num_variables = 0;
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> x;
  Rational objective;
  std::size_t pivots = 0;
};

// Two-phase primal simplex over exact rationals. Bland's rule is used for
// both entering and leaving variables, so the method cannot cycle.
LpSolution SolveLinearProgram(const LinearProgram& lp);

}  // namespace tldg

#endif  // TLDG_EXACT_LINEAR_HPP_
