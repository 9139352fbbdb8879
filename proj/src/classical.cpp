#include "nlgames/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlgames/errors.hpp"

namespace nlgames {

namespace {

// Number of deterministic strategies, or 0 if it would exceed the budget.
std::uint64_t strategy_count(const Scenario& sc) {
  std::uint64_t n = 1;
  const auto digits = static_cast<std::uint64_t>(sc.parties) * static_cast<std::uint64_t>(sc.settings);
  for (std::uint64_t i = 0; i < digits; ++i) {
    n *= static_cast<std::uint64_t>(sc.outcomes);
    if (n > kClassicalEnumerationBudget) return 0;
  }
  return n;
}

}  // namespace

DeterministicStrategy DeterministicStrategy::from_index(const Scenario& sc, std::uint64_t index) {
  DeterministicStrategy st{sc, std::vector<int>(static_cast<std::size_t>(sc.parties * sc.settings))};
  for (auto& a : st.table) {
    a = static_cast<int>(index % static_cast<std::uint64_t>(sc.outcomes));
    index /= static_cast<std::uint64_t>(sc.outcomes);
  }
  return st;
}

std::uint64_t DeterministicStrategy::index() const {
  std::uint64_t idx = 0;
  for (auto it = table.rbegin(); it != table.rend(); ++it) idx = idx * static_cast<std::uint64_t>(scenario.outcomes) + static_cast<std::uint64_t>(*it);
  return idx;
}

Behavior deterministic_behavior(const DeterministicStrategy& strategy) {
  const Scenario& sc = strategy.scenario;
  std::vector<double> table(sc.n_entries(), 0.0);
  std::vector<int> answers(static_cast<std::size_t>(sc.parties));
  for (std::size_t s = 0; s < sc.n_setting_tuples(); ++s) {
    for (int k = 0; k < sc.parties; ++k) answers[static_cast<std::size_t>(k)] = strategy.answer(k, sc.setting_of(s, k));
    table[s * sc.n_outcome_tuples() + sc.outcome_index(answers)] = 1.0;
  }
  return Behavior(sc, std::move(table));
}

ClassicalResult classical_max(const Game& game) {
  const Scenario& sc = game.scenario();
  const std::uint64_t n = strategy_count(sc);
  if (n == 0) throw BudgetExceeded("classical_max: strategy enumeration exceeds budget");

  const auto n_set = sc.n_setting_tuples();
  const auto& dist = game.setting_distribution();
  std::vector<int> answers(static_cast<std::size_t>(sc.parties));

  ClassicalResult best{-1.0, {}};
  std::uint64_t best_index = 0;
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    const auto st = DeterministicStrategy::from_index(sc, idx);
    double value = 0.0;
    for (std::size_t s = 0; s < n_set; ++s) {
      for (int k = 0; k < sc.parties; ++k) answers[static_cast<std::size_t>(k)] = st.answer(k, sc.setting_of(s, k));
      if (game.wins(sc.outcome_index(answers), s)) value += dist[s];
    }
    if (value > best.value) {
      best.value = value;
      best_index = idx;
    }
  }
  best.argmax = DeterministicStrategy::from_index(sc, best_index);
  return best;
}

double classical_operator_max(const CoefficientTable& coeffs) {
  const Scenario sc{coeffs.parties, coeffs.settings, 2};
  sc.validate();
  if (coeffs.c.size() != sc.n_setting_tuples()) throw InvalidArgument("classical_operator_max: wrong table length");
  const std::uint64_t n = strategy_count(sc);
  if (n == 0) throw BudgetExceeded("classical_operator_max: sign enumeration exceeds budget");

  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    const auto st = DeterministicStrategy::from_index(sc, idx);
    double value = 0.0;
    for (std::size_t s = 0; s < coeffs.c.size(); ++s) {
      int sign = coeffs.c[s];
      for (int k = 0; k < sc.parties; ++k)
        if (st.answer(k, sc.setting_of(s, k))) sign = -sign;
      value += sign;
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace nlgames
