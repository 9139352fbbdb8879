#pragma once

// Fine-grained uncertainty bound for a single qubit.
//
// P(T, rho) = sum_t p(t) Tr[Pi_t rho] is linear in rho, so its maximum over
// all states (mixed included) is attained on a pure state and equals the
// largest eigenvalue of the weighted projector sum Z = sum_t p(t) Pi_t.

#include <vector>

#include "nlgames/qcore.hpp"

namespace nlgames {

struct FurMeasurement {
  double probability = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  int target = 0;  // outcome bit whose probability is counted
};

class FurScenario {
 public:
  // Probabilities must be >= 0 and sum to 1 within 1e-12; targets 0 or 1.
  explicit FurScenario(std::vector<FurMeasurement> measurements);
  const std::vector<FurMeasurement>& measurements() const { return measurements_; }

  ComplexMatrix weighted_projector_sum() const;

 private:
  std::vector<FurMeasurement> measurements_;
};

struct ZetaResult {
  double value = 0.0;
  Ket argmax_state{std::vector<Complex>{1.0, 0.0}};
};

ZetaResult zeta(const FurScenario& scenario);

double p_total(const FurScenario& scenario, const Ket& state);

}  // namespace nlgames
