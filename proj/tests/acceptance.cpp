// One line per acceptance criterion; exit status is the number of failures.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "nlgames/classical.hpp"
#include "nlgames/fur.hpp"
#include "nlgames/nosignal.hpp"
#include "nlgames/quantum.hpp"
#include "test_support.hpp"

using namespace nlgames;

namespace {

constexpr double kTsirelson = 0.5 + 0.5 / std::numbers::sqrt2;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  Outcome() { detail.precision(12); }

  // Records a comparison and keeps the first few numbers for the report line.
  void near(const std::string& what, double got, double want, double tol) {
    const bool ok = std::abs(got - want) <= tol;
    pass = pass && ok;
    detail << what << "=" << got << (ok ? "" : " (want " + std::to_string(want) + ")") << "; ";
  }
  void require(const std::string& what, bool ok) {
    pass = pass && ok;
    if (!ok) detail << what << " failed; ";
  }
};

OptimizationConfig config() {
  OptimizationConfig c;
  c.seed = 42;
  c.restarts = 100;
  return c;
}

Outcome chsh() {
  Outcome r;
  const auto spec = builtin_game("chsh");
  const auto game = xor_to_game(spec);
  const double c = classical_max(game).value;
  r.require("classical == 3/4", c == 0.75);
  r.near("classical", c, 0.75, 0.0);
  r.near("quantum", optimize_game(spec, chsh_optimal_state(), config()).best_value, kTsirelson, 1e-4);
  r.near("ns", ns_max(game).value, 1.0, 1e-9);
  return r;
}

Outcome svetlichny() {
  Outcome r;
  const auto spec = builtin_game("svetlichny");
  const auto game = xor_to_game(spec);
  r.near("classical", classical_max(game).value, 0.75, 0.0);
  const double s_ghz = optimize_operator(spec, ghz_state(), config()).best_value;
  r.near("S1(ghz)", s_ghz, 4 * std::numbers::sqrt2, 1e-3);
  r.near("P(ghz)", optimize_game(spec, ghz_state(), config()).best_value, kTsirelson, 1e-4);
  r.near("S1(w)", optimize_operator(spec, w_state(), config()).best_value, 4.354, 5e-3);
  r.near("ns", ns_max(game).value, 1.0, 1e-9);
  return r;
}

Outcome mermin(const std::string& name, double s, double p) {
  Outcome r;
  const auto spec = builtin_game(name);
  const auto game = xor_to_game(spec);
  r.near("S_classical", classical_operator_max(correlation_coefficients(spec)), s, 0.0);
  r.near("P_classical", classical_max(game).value, p, 0.0);
  for (const auto& [label, state] : {std::pair{"ghz", ghz_state()}, std::pair{"w", w_state()}}) {
    r.near(std::string("S(") + label + ")", optimize_operator(spec, state, config()).best_value, s, 1e-4);
    r.near(std::string("P(") + label + ")", optimize_game(spec, state, config()).best_value, p, 1e-4);
  }
  r.near("ns", ns_max(game).value, 1.0, 1e-9);
  return r;
}

Outcome published_angles() {
  Outcome r;
  for (const auto& set : paper_angle_sets()) {
    const bool s2 = set.name == "s2_ghz";
    const auto spec = builtin_game(s2 ? "mermin_a" : "mermin_b");
    r.near(s2 ? "S2" : "S3", operator_expectation(spec, ghz_state(), set.setup()), s2 ? 4.0 : 6.0, 1e-2);
  }
  return r;
}

Outcome fine_grained() {
  Outcome r;
  const FurScenario sc({{0.5, 0.0, 0.0, 0}, {0.5, std::numbers::pi / 2, 0.0, 0}});
  const auto z = zeta(sc);
  r.near("zeta", z.value, kTsirelson, 1e-9);
  // +1 eigenstate of (X + Z)/sqrt2 is the +1 eigenstate of the Bloch axis theta = pi/4.
  const auto axis = hermitian_eigen(bloch_observable(std::numbers::pi / 4, 0.0)).eigenvectors.back();
  r.near("fidelity", std::norm(inner(axis, z.argmax_state)), 1.0, 1e-9);
  return r;
}

Outcome identity_suite() {
  Outcome r;
  double worst = 0.0;
  for (const auto& spec : builtin_games()) {
    const auto game = xor_to_game(spec);
    const double n = static_cast<double>(spec.f.size());
    for (int trial = 0; trial < 1000; ++trial) {
      const PureState psi(spec.parties, testing::random_ket(std::size_t{1} << spec.parties));
      const auto setup = testing::random_setup(spec.parties);
      const double direct = winning_probability(game, quantum_behavior(psi, setup));
      const double via_operator = 0.5 * (1.0 + operator_expectation(spec, psi, setup) / n);
      worst = std::max(worst, std::abs(direct - via_operator));
    }
  }
  r.near("max |direct - operator|", worst, 0.0, 1e-12);
  return r;
}

Outcome box_suite() {
  Outcome r;
  double worst_res = 0.0, worst_corr = 0.0;
  for (const auto& spec : builtin_games()) {
    const auto box = box_behavior(spec);
    worst_res = std::max(worst_res, ns_residual(box));
    r.require(spec.name + " wins with certainty", winning_probability(xor_to_game(spec), box) == 1.0);
    if (spec.parties != 3) continue;
    for (unsigned mask : {1u, 2u, 4u, 3u, 5u, 6u})
      for (std::size_t s = 0; s < 8; ++s) worst_corr = std::max(worst_corr, std::abs(box.correlator(mask, s)));
  }
  r.near("ns residual", worst_res, 0.0, 1e-12);
  r.near("partial correlators", worst_corr, 0.0, 1e-12);
  return r;
}

Outcome hierarchy() {
  Outcome r;
  auto specs = builtin_games();
  for (int k = 0; k < 50; ++k) specs.push_back(make_xor_spec(3, 2, testing::random_bits(8)));
  OptimizationConfig c = config();
  c.restarts = 20;
  int violations = 0;
  for (const auto& spec : specs) {
    const auto game = xor_to_game(spec);
    const double cl = classical_max(game).value, ns = ns_max(game).value;
    const std::vector<PureState> states =
        spec.parties == 2 ? std::vector<PureState>{chsh_optimal_state()} : std::vector<PureState>{ghz_state(), w_state()};
    for (const auto& psi : states) {
      const double q = optimize_game(spec, psi, c).best_value;
      if (!(cl <= q + 1e-9 && q <= ns + 1e-9)) ++violations;
    }
  }
  r.require("classical <= quantum <= ns", violations == 0);
  r.detail << specs.size() << " games, " << violations << " violations; ";
  return r;
}

Outcome oracle() {
  Outcome r;
  int mismatches = 0;
  for (int k = 0; k < 50; ++k) {
    const auto spec = make_xor_spec(3, 2, testing::random_bits(8));
    const double n = static_cast<double>(spec.f.size());
    if (classical_max(xor_to_game(spec)).value != 0.5 * (1.0 + classical_operator_max(correlation_coefficients(spec)) / n))
      ++mismatches;
  }
  r.require("enumeration == operator route", mismatches == 0);
  r.detail << "50 games, " << mismatches << " mismatches; ";
  return r;
}

std::string run_cli(const std::string& args, int& status) {
  std::string out;
  FILE* pipe = popen((std::string(NLGAMES_CLI_PATH) + " " + args).c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome determinism() {
  Outcome r;
  int st1 = 0, st2 = 0;
  const auto a = run_cli("reproduce --seed 42", st1);
  const auto b = run_cli("reproduce --seed 42", st2);
  r.require("non-empty output", !a.empty());
  r.require("byte-identical", a == b);
  r.require("same exit status", st1 == st2);
  r.detail << a.size() << " bytes; ";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"CHSH values", chsh},
      {"Svetlichny values", svetlichny},
      {"Mermin box a", [] { return mermin("mermin_a", 4.0, 0.75); }},
      {"Mermin box b", [] { return mermin("mermin_b", 6.0, 0.875); }},
      {"published angle sets", published_angles},
      {"fine-grained zeta", fine_grained},
      {"direct sum equals operator formula", identity_suite},
      {"box behaviors", box_suite},
      {"classical <= quantum <= no-signaling", hierarchy},
      {"enumeration matches operator maximum", oracle},
      {"reproduce is deterministic", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail << "exception: " << e.what();
    }
    failures += r.pass ? 0 : 1;
    std::printf("criterion %2zu %s: %s  [%s]\n", i + 1, r.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                r.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
