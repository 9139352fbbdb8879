#pragma once

#include <cstddef>
#include <vector>

namespace nlgames {

// maximize c.x  subject to  A x = b,  0 <= x <= 1.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;  // equality constraint matrix
  std::vector<double> rhs;

  std::size_t n_vars() const { return objective.size(); }
  // Throws InvalidArgument on ragged rows or length mismatches.
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> duals;             // per equality row; 0 for rows dropped as redundant
  double primal_residual = 0.0;          // max |A x - b|
  double dual_infeasibility = 0.0;       // max(0, max_j reduced cost_j)
  double complementary_slackness = 0.0;  // max_j |x_j * reduced cost_j|
  int pivots = 0;
  int redundant_rows = 0;
};

// Two-phase dense tableau simplex with Bland's rule and pivot tolerance 1e-11.
// The upper bounds become rows x_j + s_j = 1 with slack s_j >= 0. Rows left
// with an artificial basic variable after phase one are redundant and dropped.
// Duals are recomputed from the final basis against the original matrix, so
// the reported slackness residuals check the tableau arithmetic.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace nlgames
