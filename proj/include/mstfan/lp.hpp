#pragma once

#include "mstfan/matrix.hpp"

namespace mstfan {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  RationalVector x;  // optimal point when status == optimal
  Rational value;    // optimal objective value when status == optimal
};

// Exact two-phase primal simplex with Bland's rule:
//
//   maximize  objective . x   subject to  rows . x >= rhs,   x free.
//
// Pivoting is done in rational arithmetic, so the result is exact. Bland's
// rule guarantees termination on degenerate problems.
LpResult maximize(const Matrix& rows, const RationalVector& rhs, const RationalVector& objective);

// Feasibility only; returns a point of {rows . x >= rhs} when one exists.
std::optional<RationalVector> find_feasible(const Matrix& rows, const RationalVector& rhs);

}  // namespace mstfan
