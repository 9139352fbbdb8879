#pragma once

// Classical (local hidden variable) values by exhaustive enumeration.
//
// The local polytope is the convex hull of deterministic strategies, and the
// winning probability is linear in the behavior, so the maximum over shared
// randomness is attained at a deterministic strategy. Enumerating those is
// exact; no LP is needed on this side.

#include <cstdint>
#include <vector>

#include "nlgames/games.hpp"

namespace nlgames {

// Enumeration budget for both the strategy and the sign-assignment searches.
inline constexpr std::uint64_t kClassicalEnumerationBudget = 1'000'000;

struct DeterministicStrategy {
  Scenario scenario;
  std::vector<int> table;  // outcome for party k, setting x at [k * settings + x]

  int answer(int party, int setting) const { return table[static_cast<std::size_t>(party * scenario.settings + setting)]; }

  // Strategy number `index` in mixed radix: party 0 setting 0 is the least
  // significant digit.
  static DeterministicStrategy from_index(const Scenario& sc, std::uint64_t index);
  std::uint64_t index() const;
};

Behavior deterministic_behavior(const DeterministicStrategy& strategy);

struct ClassicalResult {
  double value = 0.0;
  DeterministicStrategy argmax;
};

// Ties go to the lowest strategy index. Throws BudgetExceeded when
// (outcomes^settings)^parties > kClassicalEnumerationBudget.
ClassicalResult classical_max(const Game& game);

// max over a_x, b_y, c_z in {-1, +1} of sum_settings c(settings) a_s b_t c_u.
double classical_operator_max(const CoefficientTable& coeffs);

}  // namespace nlgames
