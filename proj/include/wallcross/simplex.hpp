#pragma once

#include "wallcross/linalg.hpp"
#include "wallcross/rational.hpp"

namespace wallcross::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status;
  Rational objective;  // valid when Optimal
  VecQ x;              // valid when Optimal
};

// maximize c.x  subject to  A x = b, x >= 0.
// Exact two-phase simplex with Bland's rule; terminates on every input.
Solution maximize(const MatQ& a, const VecQ& b, const VecQ& c);

// Is { x >= 0 : A x = b } nonempty?
bool feasible(const MatQ& a, const VecQ& b);

}  // namespace wallcross::lp
