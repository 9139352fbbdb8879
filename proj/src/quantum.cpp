#include "nlgames/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "nlgames/errors.hpp"
#include "nlgames/nelder_mead.hpp"

namespace nlgames {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

void require_match(const PureState& state, int parties, int settings) {
  if (state.parties() != parties) throw InvalidArgument("party count of state and measurements differ");
  if (settings < 1) throw InvalidArgument("need at least one setting per party");
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

double real_overlap(std::span<const Complex> psi, std::span<const Complex> v) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) s += std::conj(psi[i]) * v[i];
  return s.real();
}

// Vectors obtained by applying ops[k][choice] for parties 0..n-1 in turn, for
// every combination of choices; index = c0 + m*c1 + m^2*c2 ...
std::vector<std::vector<Complex>> product_tree(const PureState& state,
                                               const std::vector<std::vector<ComplexMatrix>>& ops) {
  const int n = state.parties();
  const auto amps = state.ket().amplitudes();
  std::vector<std::vector<Complex>> level{std::vector<Complex>(amps.begin(), amps.end())};
  for (int k = 0; k < n; ++k) {
    const auto& choices = ops[static_cast<std::size_t>(k)];
    std::vector<std::vector<Complex>> next(level.size() * choices.size(), std::vector<Complex>(amps.size()));
    for (std::size_t c = 0; c < choices.size(); ++c)
      for (std::size_t i = 0; i < level.size(); ++i)
        apply_local(choices[c], static_cast<std::size_t>(k), static_cast<std::size_t>(n), level[i],
                    next[i + level.size() * c]);
    level = std::move(next);
  }
  return level;
}

ComplexMatrix observable_from(std::span<const double> flat, int party, int setting, int settings) {
  const auto base = static_cast<std::size_t>(2 * (party * settings + setting));
  return bloch_observable(flat[base], flat[base + 1]);
}

std::vector<double> correlators_flat(const PureState& state, int settings, std::span<const double> flat) {
  const int n = state.parties();
  std::vector<std::vector<ComplexMatrix>> ops(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < settings; ++x) ops[static_cast<std::size_t>(k)].push_back(observable_from(flat, k, x, settings));
  const auto leaves = product_tree(state, ops);
  std::vector<double> e(leaves.size());
  for (std::size_t s = 0; s < leaves.size(); ++s) e[s] = real_overlap(state.ket().amplitudes(), leaves[s]);
  return e;
}

std::vector<double> behavior_table_flat(const PureState& state, int settings, std::span<const double> flat) {
  const int n = state.parties();
  // Per party: choice = setting + settings * outcome.
  std::vector<std::vector<ComplexMatrix>> ops(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<ComplexMatrix> obs;
    for (int x = 0; x < settings; ++x) obs.push_back(observable_from(flat, k, x, settings));
    for (int o = 0; o < 2; ++o)
      for (int x = 0; x < settings; ++x) ops[static_cast<std::size_t>(k)].push_back(outcome_projector(obs[static_cast<std::size_t>(x)], o));
  }
  const auto leaves = product_tree(state, ops);

  const Scenario sc{n, settings, 2};
  std::vector<double> table(sc.n_entries());
  const std::size_t m = static_cast<std::size_t>(2 * settings);
  for (std::size_t leaf = 0; leaf < leaves.size(); ++leaf) {
    std::size_t rest = leaf, s_idx = 0, o_idx = 0;
    for (int k = 0; k < n; ++k) {
      const std::size_t choice = rest % m;
      rest /= m;
      s_idx += (choice % static_cast<std::size_t>(settings)) * ipow(static_cast<std::size_t>(settings), k);
      o_idx += (choice / static_cast<std::size_t>(settings)) << k;
    }
    table[s_idx * sc.n_outcome_tuples() + o_idx] = real_overlap(state.ket().amplitudes(), leaves[leaf]);
  }
  return table;
}

double central_gradient_max(const std::function<double(std::span<const double>)>& f, std::vector<double> x) {
  constexpr double h = 1e-5;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double x0 = x[i];
    x[i] = x0 + h;
    const double fp = f(x);
    x[i] = x0 - h;
    const double fm = f(x);
    x[i] = x0;
    worst = std::max(worst, std::abs(fp - fm) / (2.0 * h));
  }
  return worst;
}

struct RestartOutcome {
  double value = 0.0;
  std::vector<double> x;
};

RestartOutcome run_restart(const std::function<double(std::span<const double>)>& f, std::size_t n_params,
                           const OptimizationConfig& config, int restart) {
  SplitMix rng(config.seed, static_cast<std::uint64_t>(restart));
  std::vector<double> x0(n_params);
  for (std::size_t i = 0; i < n_params; ++i)
    x0[i] = (i % 2 == 0 ? std::numbers::pi : kTwoPi) * rng.uniform();

  NelderMeadOptions opts{config.max_iters, config.tol, 0.3};
  auto r = nelder_mead_maximize(f, std::move(x0), opts);
  // Re-seed the simplex at the converged point; stalls in 8-12 dimensions are
  // common and a fresh simplex usually escapes them.
  for (int polish = 0; polish < 3; ++polish) {
    NelderMeadOptions popts{config.max_iters, config.tol, 0.05};
    auto p = nelder_mead_maximize(f, r.x, popts);
    const bool improved = p.value > r.value + 1e-14;
    if (p.value >= r.value) r = std::move(p);
    if (!improved) break;
  }
  return {r.value, std::move(r.x)};
}

OptimizationResult multistart(const std::function<double(std::span<const double>)>& f, int parties, int settings,
                              const OptimizationConfig& config) {
  if (config.restarts <= 0) throw InvalidArgument("optimizer: restarts must be positive");
  if (config.max_iters <= 0 || !(config.tol > 0.0)) throw InvalidArgument("optimizer: invalid iteration budget or tolerance");
  const auto n_params = static_cast<std::size_t>(2 * parties * settings);

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  const int threads = std::clamp(config.threads, 1, config.restarts);
  if (threads == 1) {
    for (int r = 0; r < config.restarts; ++r) outcomes[static_cast<std::size_t>(r)] = run_restart(f, n_params, config, r);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int r = t; r < config.restarts; r += threads)
          outcomes[static_cast<std::size_t>(r)] = run_restart(f, n_params, config, r);
      });
  }

  OptimizationResult res;
  res.restarts_run = config.restarts;
  int best = 0;
  for (int r = 0; r < config.restarts; ++r) {
    res.history.push_back(outcomes[static_cast<std::size_t>(r)].value);
    if (outcomes[static_cast<std::size_t>(r)].value > outcomes[static_cast<std::size_t>(best)].value) best = r;
  }
  res.best_restart = best;
  res.best_setup = MeasurementSetup::from_flat(parties, settings, outcomes[static_cast<std::size_t>(best)].x);
  const auto canonical = res.best_setup.flat();
  res.best_value = outcomes[static_cast<std::size_t>(best)].value;
  res.stationarity_residual = central_gradient_max(f, canonical);
  return res;
}

}  // namespace

BlochAngles canonicalize(BlochAngles a) {
  double theta = wrap(a.theta, kTwoPi);
  double phi = a.phi;
  if (theta > std::numbers::pi) {
    theta = kTwoPi - theta;
    phi += std::numbers::pi;
  }
  return {theta, wrap(phi, kTwoPi)};
}

MeasurementSetup::MeasurementSetup(int parties, int settings, std::vector<BlochAngles> angles)
    : parties_(parties), settings_(settings), angles_(std::move(angles)) {
  if (parties < 1 || settings < 1) throw InvalidArgument("MeasurementSetup: need parties >= 1 and settings >= 1");
  if (angles_.size() != static_cast<std::size_t>(parties * settings)) {
    throw InvalidArgument("MeasurementSetup: expected one angle pair per party and setting");
  }
  for (auto& a : angles_) {
    if (!std::isfinite(a.theta) || !std::isfinite(a.phi)) throw InvalidArgument("MeasurementSetup: non-finite angle");
    a = canonicalize(a);
  }
}

MeasurementSetup MeasurementSetup::from_flat(int parties, int settings, std::span<const double> flat) {
  if (flat.size() != static_cast<std::size_t>(2 * parties * settings)) {
    throw InvalidArgument("MeasurementSetup::from_flat: wrong parameter count");
  }
  std::vector<BlochAngles> angles;
  for (std::size_t i = 0; i < flat.size(); i += 2) angles.push_back({flat[i], flat[i + 1]});
  return MeasurementSetup(parties, settings, std::move(angles));
}

std::vector<double> MeasurementSetup::flat() const {
  std::vector<double> out;
  out.reserve(2 * angles_.size());
  for (const auto& a : angles_) {
    out.push_back(a.theta);
    out.push_back(a.phi);
  }
  return out;
}

ComplexMatrix MeasurementSetup::observable(int party, int setting) const {
  const auto& a = angles(party, setting);
  return bloch_observable(a.theta, a.phi);
}

PureState::PureState(int parties, Ket ket) : parties_(parties), ket_(std::move(ket)) {
  if (parties < 1 || parties > 3) throw InvalidArgument("PureState: 1 to 3 qubits supported");
  if (ket_.dim() != (std::size_t{1} << parties)) throw InvalidArgument("PureState: ket dimension is not 2^parties");
}

PureState ghz_state() {
  std::vector<Complex> a(8);
  a[0] = a[7] = 1.0 / std::numbers::sqrt2;
  return PureState(3, Ket(std::move(a)));
}

PureState w_state() {
  std::vector<Complex> a(8);
  a[1] = a[2] = a[4] = 1.0 / std::sqrt(3.0);
  return PureState(3, Ket(std::move(a)));
}

PureState chsh_optimal_state() {
  std::vector<Complex> a(4);
  a[0] = a[3] = 1.0 / std::numbers::sqrt2;
  return PureState(2, Ket(std::move(a)));
}

PureState named_state(const std::string& name) {
  if (name == "ghz") return ghz_state();
  if (name == "w") return w_state();
  if (name == "bell" || name == "chsh_optimal") return chsh_optimal_state();
  throw InvalidArgument("unknown state: " + name);
}

Behavior quantum_behavior(const PureState& state, const MeasurementSetup& setup) {
  require_match(state, setup.parties(), setup.settings());
  const auto flat = setup.flat();
  return Behavior(Scenario{state.parties(), setup.settings(), 2}, behavior_table_flat(state, setup.settings(), flat));
}

std::vector<double> full_correlators(const PureState& state, const MeasurementSetup& setup) {
  require_match(state, setup.parties(), setup.settings());
  const auto flat = setup.flat();
  return correlators_flat(state, setup.settings(), flat);
}

double operator_expectation(const XorGameSpec& spec, const PureState& state, const MeasurementSetup& setup) {
  if (spec.parties != setup.parties() || spec.settings != setup.settings()) {
    throw InvalidArgument("operator_expectation: game and measurement shapes differ");
  }
  const auto coeffs = correlation_coefficients(spec);
  const auto e = full_correlators(state, setup);
  double total = 0.0;
  for (std::size_t s = 0; s < e.size(); ++s) total += coeffs.c[s] * e[s];
  return total;
}

OptimizationResult optimize_game(const Game& game, const PureState& state, const OptimizationConfig& config) {
  const Scenario& sc = game.scenario();
  if (sc.outcomes != 2) throw InvalidArgument("optimize_game: binary outcomes required");
  require_match(state, sc.parties, sc.settings);
  auto f = [&](std::span<const double> x) {
    return winning_probability(game, Behavior(sc, behavior_table_flat(state, sc.settings, x)));
  };
  return multistart(f, sc.parties, sc.settings, config);
}

OptimizationResult optimize_game(const XorGameSpec& spec, const PureState& state, const OptimizationConfig& config) {
  spec.validate();
  require_match(state, spec.parties, spec.settings);
  const auto coeffs = correlation_coefficients(spec);
  auto f = [&](std::span<const double> x) {
    const auto e = correlators_flat(state, spec.settings, x);
    double p = 0.0;
    for (std::size_t s = 0; s < e.size(); ++s) p += spec.setting_distribution[s] * 0.5 * (1.0 + coeffs.c[s] * e[s]);
    return p;
  };
  return multistart(f, spec.parties, spec.settings, config);
}

OptimizationResult optimize_operator(const XorGameSpec& spec, const PureState& state,
                                     const OptimizationConfig& config) {
  spec.validate();
  require_match(state, spec.parties, spec.settings);
  const auto coeffs = correlation_coefficients(spec);
  auto f = [&](std::span<const double> x) {
    const auto e = correlators_flat(state, spec.settings, x);
    double v = 0.0;
    for (std::size_t s = 0; s < e.size(); ++s) v += coeffs.c[s] * e[s];
    return v;
  };
  return multistart(f, spec.parties, spec.settings, config);
}

std::vector<PublishedAngleSet> paper_angle_sets() {
  return {
      {"s2_ghz",
       {{3.1149, 2.5271}, {1.5708, 0.4608},    // A0, A1
        {1.5708, 1.7282}, {4.7124, 1.7282},    // B0, B1
        {4.7124, 0.9526}, {4.7124, 4.0942}}},  // C0, C1
      {"s3_ghz",
       {{4.7124, 1.6707}, {4.7124, 1.6737},
        {1.5708, 4.6120}, {4.7124, 1.4735},
        {4.7124, 6.2806}, {4.7124, 4.0005}}},
  };
}

}  // namespace nlgames
