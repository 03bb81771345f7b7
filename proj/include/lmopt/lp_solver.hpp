#pragma once

#include "lmopt/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace lmopt {

// Standard-form linear program: maximize c.x subject to A.x = b, x >= 0.
// Callers insert their own slack variables; only equality rows here.
struct LinearProgram {
  Vector c;
  Matrix A;
  Vector b;

  void validate() const;  // throws UsageError on inconsistent shapes
};

enum class SolveStatus { optimal, infeasible, unbounded };

const char* to_string(SolveStatus status);

struct SimplexSolution {
  SolveStatus status = SolveStatus::infeasible;
  Vector x;
  Real objective_value = 0.0;
  std::vector<int> basis;  // basic variable per remaining tableau row
  std::uint64_t iterations = 0;
};

// Solver tolerances, fixed: entries smaller than kPivotTol never pivot,
// feasibility and optimality are certified to kFeasTol.
inline constexpr Real kPivotTol = 1e-9;
inline constexpr Real kFeasTol = 1e-8;

// Two-phase dense-tableau simplex with Bland's rule (smallest eligible
// index enters; ratio ties leave by smallest basic index). Bland keeps the
// massively degenerate programs built here from cycling, and makes the
// returned basis a pure function of the input. Redundant rows discovered in
// phase one are dropped. Throws SolverError when the final residual check
// fails or the iteration cap trips.
SimplexSolution solve(const LinearProgram& lp);

// Human-readable dump (objective row, then constraint rows) for triage.
void dump(const LinearProgram& lp, std::ostream& out);

}  // namespace lmopt
