#include "nlgames/games.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "nlgames/constants.hpp"
#include "nlgames/errors.hpp"

namespace nlgames {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int parity_of(const Scenario& sc, std::size_t outcome_index) {
  int par = 0;
  for (int k = 0; k < sc.parties; ++k) par ^= sc.outcome_of(outcome_index, k) & 1;
  return par;
}

}  // namespace

std::size_t Scenario::n_setting_tuples() const { return ipow(static_cast<std::size_t>(settings), parties); }
std::size_t Scenario::n_outcome_tuples() const { return ipow(static_cast<std::size_t>(outcomes), parties); }

int Scenario::setting_of(std::size_t setting_index, int party) const {
  return static_cast<int>((setting_index / ipow(static_cast<std::size_t>(settings), party)) % settings);
}

int Scenario::outcome_of(std::size_t outcome_index, int party) const {
  return static_cast<int>((outcome_index / ipow(static_cast<std::size_t>(outcomes), party)) % outcomes);
}

std::size_t Scenario::setting_index(const std::vector<int>& per_party) const {
  std::size_t idx = 0;
  for (int k = parties - 1; k >= 0; --k) idx = idx * settings + static_cast<std::size_t>(per_party.at(k));
  return idx;
}

std::size_t Scenario::outcome_index(const std::vector<int>& per_party) const {
  std::size_t idx = 0;
  for (int k = parties - 1; k >= 0; --k) idx = idx * outcomes + static_cast<std::size_t>(per_party.at(k));
  return idx;
}

void Scenario::validate() const {
  if (parties < 1 || settings < 1 || outcomes < 2) {
    throw InvalidArgument("Scenario: need parties >= 1, settings >= 1, outcomes >= 2");
  }
  if (parties > 16 || settings > 64 || outcomes > 64) throw InvalidArgument("Scenario: dimensions out of range");
}

std::vector<double> uniform_distribution(const Scenario& sc) {
  const auto n = sc.n_setting_tuples();
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

void validate_distribution(const Scenario& sc, const std::vector<double>& dist) {
  if (dist.size() != sc.n_setting_tuples()) throw InvalidArgument("setting distribution: wrong length");
  double sum = 0.0;
  for (double p : dist) {
    if (!std::isfinite(p) || p < 0.0) throw InvalidArgument("setting distribution: negative or non-finite entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol::kArithmetic) throw InvalidArgument("setting distribution: does not sum to 1");
}

Game::Game(Scenario scenario, std::vector<int> predicate, std::vector<double> setting_distribution,
           std::string name)
    : scenario_(scenario),
      predicate_(std::move(predicate)),
      distribution_(std::move(setting_distribution)),
      name_(std::move(name)) {
  scenario_.validate();
  if (predicate_.size() != scenario_.n_entries()) throw InvalidArgument("Game: predicate table has wrong length");
  for (int v : predicate_)
    if (v != 0 && v != 1) throw InvalidArgument("Game: predicate entries must be 0 or 1");
  validate_distribution(scenario_, distribution_);
}

bool Game::wins(std::size_t outcome_index, std::size_t setting_index) const {
  return predicate_[setting_index * scenario_.n_outcome_tuples() + outcome_index] != 0;
}

Behavior::Behavior(Scenario scenario, std::vector<double> table)
    : scenario_(scenario), table_(std::move(table)) {
  scenario_.validate();
  if (table_.size() != scenario_.n_entries()) throw InvalidArgument("Behavior: table has wrong length");
  const auto n_out = scenario_.n_outcome_tuples();
  for (std::size_t s = 0; s < scenario_.n_setting_tuples(); ++s) {
    double sum = 0.0;
    for (std::size_t o = 0; o < n_out; ++o) {
      double& p = table_[s * n_out + o];
      if (!std::isfinite(p)) throw InvalidArgument("Behavior: non-finite entry");
      if (p < 0.0) {
        if (p < -tol::kArithmetic) throw InvalidArgument("Behavior: negative probability");
        p = 0.0;
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol::kNormalization) {
      throw InvalidArgument("Behavior: conditional distribution does not sum to 1");
    }
    if (sum != 1.0)
      for (std::size_t o = 0; o < n_out; ++o) table_[s * n_out + o] /= sum;
  }
}

double Behavior::correlator(unsigned party_mask, std::size_t setting_index) const {
  if (scenario_.outcomes != 2) throw InvalidArgument("correlator: binary outcomes required");
  double e = 0.0;
  for (std::size_t o = 0; o < scenario_.n_outcome_tuples(); ++o) {
    const int par = std::popcount(static_cast<unsigned>(o) & party_mask) & 1;
    e += (par ? -1.0 : 1.0) * p(o, setting_index);
  }
  return e;
}

Behavior uniform_behavior(const Scenario& sc) {
  sc.validate();
  return Behavior(sc, std::vector<double>(sc.n_entries(), 1.0 / static_cast<double>(sc.n_outcome_tuples())));
}

void XorGameSpec::validate() const {
  const Scenario sc = scenario();
  sc.validate();
  if (f.size() != sc.n_setting_tuples()) throw InvalidArgument("XorGameSpec: f has wrong length");
  for (int v : f)
    if (v != 0 && v != 1) throw InvalidArgument("XorGameSpec: f entries must be 0 or 1");
  validate_distribution(sc, setting_distribution);
}

XorGameSpec make_xor_spec(int parties, int settings, std::vector<int> f, std::string name) {
  XorGameSpec spec{parties, settings, std::move(f), {}, std::move(name)};
  spec.scenario().validate();
  spec.setting_distribution = uniform_distribution(spec.scenario());
  spec.validate();
  return spec;
}

double winning_probability(const Game& game, const Behavior& behavior) {
  if (!(game.scenario() == behavior.scenario())) throw InvalidArgument("winning_probability: shape mismatch");
  const Scenario& sc = game.scenario();
  double total = 0.0;
  for (std::size_t s = 0; s < sc.n_setting_tuples(); ++s) {
    double won = 0.0;
    for (std::size_t o = 0; o < sc.n_outcome_tuples(); ++o)
      if (game.wins(o, s)) won += behavior.p(o, s);
    total += game.setting_distribution()[s] * won;
  }
  return total;
}

Game xor_to_game(const XorGameSpec& spec) {
  spec.validate();
  const Scenario sc = spec.scenario();
  std::vector<int> pred(sc.n_entries());
  for (std::size_t s = 0; s < sc.n_setting_tuples(); ++s)
    for (std::size_t o = 0; o < sc.n_outcome_tuples(); ++o)
      pred[s * sc.n_outcome_tuples() + o] = parity_of(sc, o) == spec.f[s] ? 1 : 0;
  return Game(sc, std::move(pred), spec.setting_distribution, spec.name);
}

std::vector<XorGameSpec> builtin_games() {
  auto tri = [](auto rule, std::string name) {
    std::vector<int> f(8);
    for (int idx = 0; idx < 8; ++idx) {
      const int s = idx & 1, t = (idx >> 1) & 1, u = (idx >> 2) & 1;
      f[idx] = rule(s, t, u);
    }
    return make_xor_spec(3, 2, std::move(f), std::move(name));
  };
  std::vector<XorGameSpec> out;
  out.push_back(make_xor_spec(2, 2, {0, 0, 0, 1}, "chsh"));
  out.push_back(tri([](int s, int t, int u) { return (s & t) ^ (t & u) ^ (u & s); }, "svetlichny"));
  out.push_back(tri([](int s, int t, int u) { return (s & t) ^ (s & u); }, "mermin_a"));
  out.push_back(tri([](int s, int t, int u) { return s & t & u; }, "mermin_b"));
  return out;
}

XorGameSpec builtin_game(const std::string& name) {
  for (auto& g : builtin_games())
    if (g.name == name) return g;
  throw InvalidArgument("unknown built-in game: " + name);
}

CoefficientTable correlation_coefficients(const XorGameSpec& spec) {
  spec.validate();
  CoefficientTable t{spec.parties, spec.settings, {}};
  t.c.reserve(spec.f.size());
  for (int v : spec.f) t.c.push_back(v ? -1 : 1);
  return t;
}

double xor_winning_probability_from_correlators(const XorGameSpec& spec, const Behavior& behavior) {
  spec.validate();
  if (!(spec.scenario() == behavior.scenario())) {
    throw InvalidArgument("xor_winning_probability_from_correlators: shape mismatch");
  }
  const auto coeffs = correlation_coefficients(spec);
  const unsigned all = (1u << spec.parties) - 1u;
  double total = 0.0;
  for (std::size_t s = 0; s < spec.f.size(); ++s)
    total += spec.setting_distribution[s] * 0.5 * (1.0 + coeffs.c[s] * behavior.correlator(all, s));
  return total;
}

Behavior box_behavior(const XorGameSpec& spec) {
  spec.validate();
  const Scenario sc = spec.scenario();
  const double mass = std::ldexp(1.0, -(sc.parties - 1));
  std::vector<double> table(sc.n_entries(), 0.0);
  for (std::size_t s = 0; s < sc.n_setting_tuples(); ++s)
    for (std::size_t o = 0; o < sc.n_outcome_tuples(); ++o)
      if (parity_of(sc, o) == spec.f[s]) table[s * sc.n_outcome_tuples() + o] = mass;
  return Behavior(sc, std::move(table));
}

}  // namespace nlgames
