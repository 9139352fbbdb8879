#pragma once

// The no-signaling polytope of a Bell scenario and LP maximization over it.
//
// A behavior is no-signaling when, for every proper subset S of parties, the
// marginal distribution of S's outcomes does not depend on the settings of
// the parties outside S.

#include <cstddef>
#include <vector>

#include "nlgames/games.hpp"
#include "nlgames/simplex.hpp"

namespace nlgames {

inline constexpr std::size_t kNsVariableBudget = 10'000;

struct ConstraintSet {
  Scenario scenario;
  std::vector<std::vector<double>> rows;  // over flat behavior entries
  std::vector<double> rhs;
  std::size_t n_normalization = 0;        // first rows are normalization
};

// Normalization rows, then, for every proper non-empty subset S, every
// outcome tuple on S and every setting tuple whose outside-S settings are not
// all zero: marginal(S | settings) - marginal(S | settings with outside-S
// settings zeroed) = 0. Equivalent to comparing every pair; redundant rows
// (e.g. single-party marginals implied by pair marginals) are kept.
ConstraintSet ns_constraints(const Scenario& sc);

// Max residual |row . p - rhs| over all constraints.
double ns_residual(const Behavior& behavior);
bool is_no_signaling(const Behavior& behavior, double tol);

struct NsResult {
  double value = 0.0;
  Behavior argmax;
  LpSolution lp;
};

// Throws BudgetExceeded past kNsVariableBudget variables and
// InvariantViolation if the LP is infeasible or the argmax fails revalidation.
NsResult ns_max(const Game& game);

}  // namespace nlgames
