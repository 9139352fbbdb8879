#pragma once

// Game model for nonlocal games with n parties, each receiving one of
// `settings` questions and returning one of `outcomes` answers.
//
// Index conventions (used everywhere, including the JSON game schema):
//   setting index  = s + S*t + S^2*u   (party 0 is the least significant digit)
//   outcome index  = a + O*b + O^2*c
// For the binary case this is s + 2t + 4u and a + 2b + 4c.
//
// Tables indexed by (outcome, setting) pairs are stored with each conditional
// distribution contiguous: flat = setting_index * n_outcome_tuples + outcome_index.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace nlgames {

struct Scenario {
  int parties = 2;
  int settings = 2;
  int outcomes = 2;

  std::size_t n_setting_tuples() const;
  std::size_t n_outcome_tuples() const;
  std::size_t n_entries() const { return n_setting_tuples() * n_outcome_tuples(); }

  // Digit of `party` in a setting/outcome index.
  int setting_of(std::size_t setting_index, int party) const;
  int outcome_of(std::size_t outcome_index, int party) const;
  std::size_t setting_index(const std::vector<int>& per_party) const;
  std::size_t outcome_index(const std::vector<int>& per_party) const;

  // Throws InvalidArgument unless parties >= 1, settings >= 1, outcomes >= 2.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Probability table over setting tuples; validated to be >= 0 and sum to 1
// within 1e-12.
std::vector<double> uniform_distribution(const Scenario& sc);
void validate_distribution(const Scenario& sc, const std::vector<double>& dist);

class Game {
 public:
  // predicate: flat (setting, outcome) table of 0/1 values.
  Game(Scenario scenario, std::vector<int> predicate, std::vector<double> setting_distribution,
       std::string name = {});

  const Scenario& scenario() const { return scenario_; }
  const std::string& name() const { return name_; }
  const std::vector<double>& setting_distribution() const { return distribution_; }
  bool wins(std::size_t outcome_index, std::size_t setting_index) const;

 private:
  Scenario scenario_;
  std::vector<int> predicate_;
  std::vector<double> distribution_;
  std::string name_;
};

class Behavior {
 public:
  // Entries in [-1e-12, 0) are clamped to zero; a conditional whose sum is off
  // by at most 1e-9 is renormalized; anything worse throws InvalidArgument.
  Behavior(Scenario scenario, std::vector<double> table);

  const Scenario& scenario() const { return scenario_; }
  double p(std::size_t outcome_index, std::size_t setting_index) const {
    return table_[setting_index * scenario_.n_outcome_tuples() + outcome_index];
  }
  const std::vector<double>& table() const { return table_; }

  // E[(-1)^(sum of outcomes of parties in mask) | settings], binary outcomes only.
  double correlator(unsigned party_mask, std::size_t setting_index) const;

 private:
  Scenario scenario_;
  std::vector<double> table_;
};

Behavior uniform_behavior(const Scenario& sc);

// An XOR game: win iff the parity of all outcomes equals f(settings).
struct XorGameSpec {
  int parties = 2;
  int settings = 2;
  std::vector<int> f;                         // indexed by setting index
  std::vector<double> setting_distribution;   // indexed by setting index
  std::string name;

  Scenario scenario() const { return Scenario{parties, settings, 2}; }
  void validate() const;
};

// Uniform distribution filled in; f entries checked.
XorGameSpec make_xor_spec(int parties, int settings, std::vector<int> f, std::string name = {});

double winning_probability(const Game& game, const Behavior& behavior);

Game xor_to_game(const XorGameSpec& spec);

// chsh, svetlichny, mermin_a, mermin_b in that order, uniform settings.
std::vector<XorGameSpec> builtin_games();
XorGameSpec builtin_game(const std::string& name);

struct CoefficientTable {
  int parties = 2;
  int settings = 2;
  std::vector<int> c;  // +1 / -1 per setting index
};

// c(settings) = (-1)^f(settings).
CoefficientTable correlation_coefficients(const XorGameSpec& spec);

// Sum_settings p(settings) * (1 + c * E_full(settings)) / 2; equals
// winning_probability for any behavior of matching shape.
double xor_winning_probability_from_correlators(const XorGameSpec& spec, const Behavior& behavior);

// p(o|s) = 2^-(n-1) when parity(o) == f(s), else 0.
Behavior box_behavior(const XorGameSpec& spec);

}  // namespace nlgames
