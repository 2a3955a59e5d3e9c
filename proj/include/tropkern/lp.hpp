#pragma once

#include "tropkern/rational.hpp"

namespace tropkern {

// maximize objective . x  subject to  ineq_lhs x >= ineq_rhs,  eq_lhs x = eq_rhs,  x free.
struct LinearProgram {
  std::size_t num_vars = 0;
  RatMat ineq_lhs;
  RatVec ineq_rhs;
  RatMat eq_lhs;
  RatVec eq_rhs;
  RatVec objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  RatVec point;
};

// Two-phase dense simplex over Q with Bland's rule.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace tropkern
