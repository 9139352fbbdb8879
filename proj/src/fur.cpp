#include "nlgames/fur.hpp"

#include <cmath>

#include "nlgames/constants.hpp"
#include "nlgames/errors.hpp"

namespace nlgames {

FurScenario::FurScenario(std::vector<FurMeasurement> measurements) : measurements_(std::move(measurements)) {
  if (measurements_.empty()) throw InvalidArgument("FurScenario: at least one measurement required");
  double sum = 0.0;
  for (const auto& m : measurements_) {
    if (!std::isfinite(m.probability) || m.probability < 0.0) throw InvalidArgument("FurScenario: bad probability");
    if (!std::isfinite(m.theta) || !std::isfinite(m.phi)) throw InvalidArgument("FurScenario: non-finite angle");
    if (m.target != 0 && m.target != 1) throw InvalidArgument("FurScenario: target must be 0 or 1");
    sum += m.probability;
  }
  if (std::abs(sum - 1.0) > tol::kArithmetic) throw InvalidArgument("FurScenario: probabilities must sum to 1");
}

ComplexMatrix FurScenario::weighted_projector_sum() const {
  ComplexMatrix z(2, 2);
  for (const auto& m : measurements_)
    z = z + Complex(m.probability) * outcome_projector(bloch_observable(m.theta, m.phi), m.target);
  return z;
}

ZetaResult zeta(const FurScenario& scenario) {
  auto eig = hermitian_eigen(scenario.weighted_projector_sum());
  return ZetaResult{eig.eigenvalues.back(), eig.eigenvectors.back()};
}

double p_total(const FurScenario& scenario, const Ket& state) {
  if (state.dim() != 2) throw InvalidArgument("p_total: single-qubit state required");
  double total = 0.0;
  for (const auto& m : scenario.measurements())
    total += m.probability * expectation(outcome_projector(bloch_observable(m.theta, m.phi), m.target), state);
  return total;
}

}  // namespace nlgames
