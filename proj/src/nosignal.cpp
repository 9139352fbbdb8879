#include "nlgames/nosignal.hpp"

#include <algorithm>
#include <cmath>

#include "nlgames/constants.hpp"
#include "nlgames/errors.hpp"

namespace nlgames {

namespace {

void check_budget(const Scenario& sc) {
  sc.validate();
  // Guard the product before it can overflow.
  double vars = 1.0;
  for (int k = 0; k < sc.parties; ++k) vars *= static_cast<double>(sc.settings) * static_cast<double>(sc.outcomes);
  if (vars > static_cast<double>(kNsVariableBudget)) throw BudgetExceeded("no-signaling LP exceeds variable budget");
}

}  // namespace

ConstraintSet ns_constraints(const Scenario& sc) {
  check_budget(sc);
  const std::size_t n_set = sc.n_setting_tuples();
  const std::size_t n_out = sc.n_outcome_tuples();
  const std::size_t n_vars = sc.n_entries();
  ConstraintSet cs{sc, {}, {}, 0};

  for (std::size_t s = 0; s < n_set; ++s) {
    std::vector<double> row(n_vars, 0.0);
    for (std::size_t o = 0; o < n_out; ++o) row[s * n_out + o] = 1.0;
    cs.rows.push_back(std::move(row));
    cs.rhs.push_back(1.0);
  }
  cs.n_normalization = cs.rows.size();

  const unsigned full = (1u << sc.parties) - 1u;
  std::vector<int> settings(static_cast<std::size_t>(sc.parties));
  for (unsigned subset = 1; subset < full; ++subset) {
    auto inside = [&](int k) { return (subset >> k) & 1u; };
    for (std::size_t s = 0; s < n_set; ++s) {
      bool outside_zero = true;
      for (int k = 0; k < sc.parties; ++k) {
        settings[static_cast<std::size_t>(k)] = sc.setting_of(s, k);
        if (!inside(k) && settings[static_cast<std::size_t>(k)] != 0) outside_zero = false;
      }
      if (outside_zero) continue;
      auto ref_settings = settings;
      for (int k = 0; k < sc.parties; ++k)
        if (!inside(k)) ref_settings[static_cast<std::size_t>(k)] = 0;
      const std::size_t s_ref = sc.setting_index(ref_settings);

      // One row per outcome assignment on S; enumerate outcome tuples whose
      // outside-S digits are zero as representatives.
      for (std::size_t o_rep = 0; o_rep < n_out; ++o_rep) {
        bool rep = true;
        for (int k = 0; k < sc.parties; ++k)
          if (!inside(k) && sc.outcome_of(o_rep, k) != 0) rep = false;
        if (!rep) continue;

        std::vector<double> row(n_vars, 0.0);
        for (std::size_t o = 0; o < n_out; ++o) {
          bool match = true;
          for (int k = 0; k < sc.parties && match; ++k)
            if (inside(k) && sc.outcome_of(o, k) != sc.outcome_of(o_rep, k)) match = false;
          if (!match) continue;
          row[s * n_out + o] += 1.0;
          row[s_ref * n_out + o] -= 1.0;
        }
        cs.rows.push_back(std::move(row));
        cs.rhs.push_back(0.0);
      }
    }
  }
  return cs;
}

double ns_residual(const Behavior& behavior) {
  const auto cs = ns_constraints(behavior.scenario());
  const auto& p = behavior.table();
  double worst = 0.0;
  for (std::size_t r = 0; r < cs.rows.size(); ++r) {
    double acc = -cs.rhs[r];
    for (std::size_t j = 0; j < p.size(); ++j) acc += cs.rows[r][j] * p[j];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

bool is_no_signaling(const Behavior& behavior, double tol) {
  const auto& p = behavior.table();
  if (std::any_of(p.begin(), p.end(), [tol](double v) { return v < -tol; })) return false;
  return ns_residual(behavior) <= tol;
}

NsResult ns_max(const Game& game) {
  const Scenario& sc = game.scenario();
  auto cs = ns_constraints(sc);

  LinearProgram lp;
  lp.objective.assign(sc.n_entries(), 0.0);
  for (std::size_t s = 0; s < sc.n_setting_tuples(); ++s)
    for (std::size_t o = 0; o < sc.n_outcome_tuples(); ++o)
      if (game.wins(o, s)) lp.objective[s * sc.n_outcome_tuples() + o] = game.setting_distribution()[s];
  lp.rows = std::move(cs.rows);
  lp.rhs = std::move(cs.rhs);

  auto sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) {
    throw InvariantViolation("ns_max: LP not optimal; the no-signaling polytope is never empty");
  }
  if (sol.primal_residual > 1e-9) throw InvariantViolation("ns_max: LP solution violates constraints");

  auto table = sol.x;
  for (auto& v : table)
    if (std::abs(v) < tol::kSnap) v = 0.0;
  Behavior argmax(sc, std::move(table));
  if (!is_no_signaling(argmax, 1e-9)) throw InvariantViolation("ns_max: argmax behavior is signaling");
  const double value = winning_probability(game, argmax);
  return NsResult{value, std::move(argmax), std::move(sol)};
}

}  // namespace nlgames
