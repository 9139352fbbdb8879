#pragma once

namespace nlgames::tol {

// Structural checks: Hermiticity, idempotence, no-signaling residuals of
// computed behaviors, dimension-level sanity.
inline constexpr double kStructural = 1e-10;

// Arithmetic identities between two routes to the same number.
inline constexpr double kArithmetic = 1e-12;

// Conditional distributions of a Behavior must sum to one within this.
inline constexpr double kNormalization = 1e-9;

// Simplex pivot threshold.
inline constexpr double kPivot = 1e-11;

// LP values below this are snapped to zero in returned behaviors.
inline constexpr double kSnap = 1e-11;

// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
// (scaled by max(1, ||H||_F)).
inline constexpr double kJacobi = 1e-12;

}  // namespace nlgames::tol
