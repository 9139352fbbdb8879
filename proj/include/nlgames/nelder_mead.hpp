#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nlgames {

struct NelderMeadOptions {
  int max_iters = 2000;
  double diameter_tol = 1e-10;  // stop once max vertex distance from best < tol
  double initial_step = 0.3;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Maximizes f starting from an axis-aligned simplex around x0.
NelderMeadResult nelder_mead_maximize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> x0, const NelderMeadOptions& opts);

// splitmix64 step; used as a counter-based generator keyed by (seed, stream).
std::uint64_t splitmix64(std::uint64_t& state);

class SplitMix {
 public:
  SplitMix(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next() { return splitmix64(state_); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace nlgames
