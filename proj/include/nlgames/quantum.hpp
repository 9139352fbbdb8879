#pragma once

// Quantum behaviors from a shared pure state and per-party projective
// +/-1 measurements given by Bloch angles, plus multi-start Nelder-Mead
// maximization over those angles for a fixed state.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nlgames/games.hpp"
#include "nlgames/qcore.hpp"

namespace nlgames {

struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

// Same direction, with theta in [0, pi] and phi in [0, 2 pi).
BlochAngles canonicalize(BlochAngles a);

class MeasurementSetup {
 public:
  // angles[party * settings + setting]; canonicalized on construction.
  MeasurementSetup(int parties, int settings, std::vector<BlochAngles> angles);
  // Flat (theta, phi) pairs in the same party-major order.
  static MeasurementSetup from_flat(int parties, int settings, std::span<const double> flat);

  int parties() const { return parties_; }
  int settings() const { return settings_; }
  const BlochAngles& angles(int party, int setting) const {
    return angles_[static_cast<std::size_t>(party * settings_ + setting)];
  }
  const std::vector<BlochAngles>& all() const { return angles_; }
  std::vector<double> flat() const;
  ComplexMatrix observable(int party, int setting) const;

 private:
  int parties_;
  int settings_;
  std::vector<BlochAngles> angles_;
};

class PureState {
 public:
  // Qubit k of the ket belongs to party k; party 0 is the most significant
  // tensor factor.
  PureState(int parties, Ket ket);
  int parties() const { return parties_; }
  const Ket& ket() const { return ket_; }

 private:
  int parties_;
  Ket ket_;
};

PureState ghz_state();           // (|000> + |111>) / sqrt 2
PureState w_state();             // (|001> + |010> + |100>) / sqrt 3
PureState chsh_optimal_state();  // (|00> + |11>) / sqrt 2
// Resolves "ghz", "w", "bell" (alias "chsh_optimal").
PureState named_state(const std::string& name);

Behavior quantum_behavior(const PureState& state, const MeasurementSetup& setup);

// Full correlators <A_s (x) B_t (x) ...> for every setting index.
std::vector<double> full_correlators(const PureState& state, const MeasurementSetup& setup);

// sum_settings c(settings) <(x) observables>.
double operator_expectation(const XorGameSpec& spec, const PureState& state, const MeasurementSetup& setup);

struct OptimizationConfig {
  int restarts = 100;
  std::uint64_t seed = 42;
  int max_iters = 2000;
  double tol = 1e-10;  // simplex diameter
  int threads = 1;
};

struct OptimizationResult {
  double best_value = 0.0;
  MeasurementSetup best_setup{1, 1, {BlochAngles{}}};
  int restarts_run = 0;
  int best_restart = 0;
  double stationarity_residual = 0.0;  // max |central difference gradient| at best_setup
  std::vector<double> history;         // best value per restart
};

// Maximizes the winning probability of `game` over measurement angles.
OptimizationResult optimize_game(const Game& game, const PureState& state, const OptimizationConfig& config);
// Same objective for an XOR game, evaluated through the correlator route.
OptimizationResult optimize_game(const XorGameSpec& spec, const PureState& state, const OptimizationConfig& config);
// Maximizes operator_expectation(spec, state, .).
OptimizationResult optimize_operator(const XorGameSpec& spec, const PureState& state,
                                     const OptimizationConfig& config);

struct PublishedAngleSet {
  std::string name;
  std::vector<BlochAngles> raw;  // as printed, party-major; theta may exceed pi
  MeasurementSetup setup() const { return MeasurementSetup(3, 2, raw); }
};

// "s2_ghz" and "s3_ghz": angle sets printed for the two Mermin-box games.
std::vector<PublishedAngleSet> paper_angle_sets();

}  // namespace nlgames
