#include <doctest.h>

#include <cmath>

#include "nlgames/classical.hpp"
#include "nlgames/errors.hpp"
#include "nlgames/nosignal.hpp"
#include "test_support.hpp"

using namespace nlgames;

namespace {

// Row rank by elimination with partial pivoting; independent of the LP code.
std::size_t rank(std::vector<std::vector<double>> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    for (std::size_t i = r + 1; i < m.size(); ++i)
      if (std::abs(m[i][c]) > std::abs(m[p][c])) p = i;
    if (std::abs(m[p][c]) < 1e-9) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      const double f = m[i][c] / m[r][c];
      if (f == 0.0) continue;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Random convex mixture of deterministic behaviors and the game's box.
Behavior random_ns_behavior(const XorGameSpec& spec) {
  const Scenario sc = spec.scenario();
  const std::uint64_t n_det = std::uint64_t{1} << (sc.parties * sc.settings);
  std::vector<double> table(sc.n_entries(), 0.0);
  std::vector<double> w(5);
  double total = 0.0;
  for (auto& x : w) total += (x = testing::uniform());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Behavior b = k == 0 ? box_behavior(spec)
                              : deterministic_behavior(DeterministicStrategy::from_index(sc, testing::rng()() % n_det));
    for (std::size_t s = 0; s < sc.n_setting_tuples(); ++s)
      for (std::size_t o = 0; o < sc.n_outcome_tuples(); ++o)
        table[s * sc.n_outcome_tuples() + o] += w[k] / total * b.p(o, s);
  }
  return Behavior(sc, table);
}

}  // namespace

TEST_CASE("constraint counts and rank") {
  const auto bi = ns_constraints({2, 2, 2});
  CHECK(bi.rows.size() == 12);
  CHECK(bi.rows[0].size() == 16);
  CHECK(bi.n_normalization == 4);
  CHECK(rank(bi.rows) == 8);  // 16 - dim 8

  const auto tri = ns_constraints({3, 2, 2});
  CHECK(tri.rows.size() == 92);
  CHECK(tri.rows[0].size() == 64);
  CHECK(tri.n_normalization == 8);
  CHECK(rank(tri.rows) == 38);  // 64 - dim 26

  // Dropping single-party rows keeps the rank: they are implied by the pairs.
  std::vector<std::vector<double>> no_singles(tri.rows.begin(), tri.rows.begin() + 8);
  for (std::size_t i = 8; i < tri.rows.size(); ++i) {
    int support = 0;
    for (double v : tri.rows[i]) support += v != 0.0;
    if (support == 8) continue;  // pair rows touch 2 * 2 entries, singles 2 * 4
    no_singles.push_back(tri.rows[i]);
  }
  CHECK(no_singles.size() == 8 + 48);
  CHECK(rank(no_singles) == 38);

  const auto three = ns_constraints({2, 3, 3});
  CHECK(rank(three.rows) == 81 - 48);  // dim (3*2+1)^2 - 1 = 48
}

TEST_CASE("no-signaling membership") {
  CHECK(is_no_signaling(uniform_behavior({3, 2, 2}), 1e-12));
  CHECK(is_no_signaling(box_behavior(builtin_game("chsh")), 1e-12));
  CHECK(ns_residual(box_behavior(builtin_game("svetlichny"))) == 0.0);

  // Alice outputs Bob's setting.
  std::vector<double> t(16, 0.0);
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 2; ++u) t[(s + 2 * u) * 4 + u] = 1.0;
  const Behavior signaling({2, 2, 2}, t);
  CHECK_FALSE(is_no_signaling(signaling, 1e-9));
  CHECK(ns_residual(signaling) == doctest::Approx(1.0));

  for (std::uint64_t idx = 0; idx < 64; ++idx)
    CHECK(is_no_signaling(deterministic_behavior(DeterministicStrategy::from_index({3, 2, 2}, idx)), 1e-12));
}

TEST_CASE("no-signaling values of the built-in games") {
  for (const auto& spec : builtin_games()) {
    const auto res = ns_max(xor_to_game(spec));
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.lp.status == LpStatus::optimal);
    CHECK(res.lp.complementary_slackness <= 1e-8);
    CHECK(is_no_signaling(res.argmax, 1e-9));
    CHECK(winning_probability(xor_to_game(spec), res.argmax) == doctest::Approx(res.value).epsilon(1e-12));
  }
}

TEST_CASE("no-signaling value dominates sampled no-signaling behaviors") {
  for (const auto& spec : builtin_games()) {
    const auto game = xor_to_game(spec);
    const double v = ns_max(game).value;
    for (int trial = 0; trial < 250; ++trial) {
      const auto b = random_ns_behavior(spec);
      REQUIRE(is_no_signaling(b, 1e-12));
      CHECK(winning_probability(game, b) <= v + 1e-9);
    }
  }
}

TEST_CASE("random games sit between classical and 1") {
  for (int trial = 0; trial < 20; ++trial) {
    const Scenario sc = trial % 2 ? Scenario{3, 2, 2} : Scenario{2, 3, 2};
    const Game g(sc, testing::random_bits(sc.n_entries()), uniform_distribution(sc));
    const auto res = ns_max(g);
    CHECK(res.value >= classical_max(g).value - 1e-9);
    CHECK(res.value <= 1.0 + 1e-9);
    CHECK(res.lp.complementary_slackness <= 1e-8);
    CHECK(res.lp.primal_residual <= 1e-9);
  }
}

TEST_CASE("variable budget") {
  const Scenario big{4, 4, 4};  // 16^4 entries
  CHECK_THROWS_AS(ns_max(Game(big, std::vector<int>(big.n_entries(), 1), uniform_distribution(big))), BudgetExceeded);
}
