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

#include "tldg/exact_linear.hpp"

#include <limits>
#include <utility>

namespace tldg {
namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

std::size_t BitLength(const Integer& v) {
  if (v == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1;
}

}  // namespace

std::vector<Rational> SolveLinearSystem(const RationalMatrix& a,
                                        const std::vector<Rational>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw PreconditionError("rhs size mismatch");
  if (n == 0) return {};

  // Augmented integer matrix [A | b], each row scaled by the lcm of its
  // denominators.
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw PreconditionError("matrix is not square");
    Integer scale = denominator(b[i]);
    for (const auto& v : a[i]) scale = boost::multiprecision::lcm(scale, denominator(v));
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = numerator(a[i][j]) * (scale / denominator(a[i][j]));
    }
    m[i][n] = numerator(b[i]) * (scale / denominator(b[i]));
  }

  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    std::size_t best_bits = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = k; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const std::size_t bits = BitLength(m[i][k]);
      if (bits < best_bits) {
        best_bits = bits;
        pivot = i;
      }
    }
    if (pivot == n) throw SingularSystem("singular linear system");
    if (pivot != k) std::swap(m[pivot], m[k]);

    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        // Exact by Sylvester's identity.
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }

  std::vector<Rational> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational acc(m[ii][n]);
    for (std::size_t j = ii + 1; j < n; ++j) {
      if (m[ii][j] != 0) acc -= Rational(m[ii][j]) * x[j];
    }
    x[ii] = acc / Rational(m[ii][ii]);
  }
  return x;
}

// ---------------------------------------------------------------------------

namespace {

class Tableau {
 public:
  Tableau(RationalMatrix rows, std::vector<std::size_t> basis,
          std::size_t num_columns)
      : rows_(std::move(rows)), basis_(std::move(basis)), cols_(num_columns) {}

  // Runs the simplex loop for the given cost vector (size cols_). Columns
  // flagged in `blocked` never enter. Returns false if unbounded.
  bool Optimize(const std::vector<Rational>& cost,
                const std::vector<bool>& blocked) {
    while (true) {
      std::size_t entering = cols_;
      for (std::size_t j = 0; j < cols_ && entering == cols_; ++j) {
        if (blocked[j] || IsBasic(j)) continue;
        if (ReducedCost(cost, j) < 0) entering = j;
      }
      if (entering == cols_) return true;

      std::size_t leaving = rows_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& coeff = rows_[i][entering];
        if (coeff <= 0) continue;
        Rational ratio = rows_[i][cols_] / coeff;
        if (leaving == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == rows_.size()) return false;
      Pivot(leaving, entering);
    }
  }

  void Pivot(std::size_t row, std::size_t col) {
    ++pivots_;
    const Rational p = rows_[row][col];
    for (auto& v : rows_[row]) v /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      const Rational f = rows_[i][col];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (rows_[row][j] != 0) rows_[i][j] -= f * rows_[row][j];
      }
    }
    basis_[row] = col;
  }

  Rational Objective(const std::vector<Rational>& cost) const {
    Rational z = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      z += cost[basis_[i]] * rows_[i][cols_];
    }
    return z;
  }

  bool IsBasic(std::size_t j) const {
    for (std::size_t b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  void RemoveRow(std::size_t i) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
  }

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t basis(std::size_t i) const { return basis_[i]; }
  const Rational& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const Rational& rhs(std::size_t i) const { return rows_[i][cols_]; }
  std::size_t pivots() const { return pivots_; }

 private:
  Rational ReducedCost(const std::vector<Rational>& cost, std::size_t j) const {
    Rational r = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i][j] != 0) r -= cost[basis_[i]] * rows_[i][j];
    }
    return r;
  }

  RationalMatrix rows_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpSolution SolveLinearProgram(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables;
  const std::size_t m = lp.constraints.size();
  if (lp.objective.size() != n) throw PreconditionError("objective size mismatch");

  // Column layout: [x | slack/surplus | artificial | rhs].
  std::size_t num_slack = 0;
  for (const auto& c : lp.constraints) {
    if (c.coefficients.size() != n) {
      throw PreconditionError("constraint size mismatch");
    }
    if (c.relation != Relation::kEqual) ++num_slack;
  }
  const std::size_t art_begin = n + num_slack;
  const std::size_t cols = art_begin + m;

  RationalMatrix rows(m, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(m);
  std::size_t slack = n;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    const bool flip = c.rhs < 0;
    const Rational sign = flip ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = sign * c.coefficients[j];
    rows[i][cols] = sign * c.rhs;
    if (c.relation != Relation::kEqual) {
      // a·x <= b  becomes a·x + s = b; a·x >= b becomes a·x - s = b.
      rows[i][slack] = (c.relation == Relation::kLessEqual ? 1 : -1) * sign;
      ++slack;
    }
    rows[i][art_begin + i] = 1;
    basis[i] = art_begin + i;
  }

  Tableau tableau(std::move(rows), std::move(basis), cols);

  std::vector<Rational> phase1(cols, Rational(0));
  for (std::size_t j = art_begin; j < cols; ++j) phase1[j] = 1;
  std::vector<bool> none_blocked(cols, false);
  tableau.Optimize(phase1, none_blocked);

  LpSolution out;
  if (tableau.Objective(phase1) != 0) {
    out.status = LpStatus::kInfeasible;
    out.pivots = tableau.pivots();
    return out;
  }

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t i = tableau.num_rows(); i-- > 0;) {
    if (tableau.basis(i) < art_begin) continue;
    std::size_t col = art_begin;
    for (std::size_t j = 0; j < art_begin; ++j) {
      if (tableau.at(i, j) != 0) {
        col = j;
        break;
      }
    }
    if (col == art_begin) {
      tableau.RemoveRow(i);
    } else {
      tableau.Pivot(i, col);
    }
  }

  std::vector<Rational> phase2(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective[j];
  std::vector<bool> artificial(cols, false);
  for (std::size_t j = art_begin; j < cols; ++j) artificial[j] = true;
  if (!tableau.Optimize(phase2, artificial)) {
    out.status = LpStatus::kUnbounded;
    out.pivots = tableau.pivots();
    return out;
  }

  out.status = LpStatus::kOptimal;
  out.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < tableau.num_rows(); ++i) {
    if (tableau.basis(i) < n) out.x[tableau.basis(i)] = tableau.rhs(i);
  }
  out.objective = 0;
  for (std::size_t j = 0; j < n; ++j) out.objective += lp.objective[j] * out.x[j];
  out.pivots = tableau.pivots();
  return out;
}

}  // namespace tldg
