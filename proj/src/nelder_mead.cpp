#include "nlgames/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nlgames/errors.hpp"

namespace nlgames {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SplitMix::SplitMix(std::uint64_t seed, std::uint64_t stream) : state_(seed) {
  std::uint64_t mix = stream ^ 0x6a09e667f3bcc909ULL;
  state_ ^= splitmix64(mix);
}

NelderMeadResult nelder_mead_maximize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> x0, const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0) throw InvalidArgument("nelder_mead_maximize: empty parameter vector");

  // Standard coefficients: reflection 1, expansion 2, contraction 1/2, shrink 1/2.
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opts.initial_step;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point_at = [&](double t, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (worst[j] - centroid[j]);
  };

  NelderMeadResult res;
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    std::iota(order.begin(), order.end(), 0);
    // Descending by value; ties keep vertex order for determinism.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });

    const auto& best = pts[order[0]];
    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(pts[order[i]][j] - best[j]));
      diameter = std::max(diameter, d);
    }
    if (diameter < opts.diameter_tol) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[order[i]][j];
    for (auto& c : centroid) c /= static_cast<double>(n);

    const std::size_t w = order[n];
    const double f_best = vals[order[0]], f_second_worst = vals[order[n - 1]], f_worst = vals[w];

    point_at(-1.0, trial, pts[w]);
    const double f_r = f(trial);
    if (f_r > f_best) {
      point_at(-2.0, trial2, pts[w]);
      const double f_e = f(trial2);
      if (f_e > f_r) {
        pts[w] = trial2;
        vals[w] = f_e;
      } else {
        pts[w] = trial;
        vals[w] = f_r;
      }
      continue;
    }
    if (f_r > f_second_worst) {
      pts[w] = trial;
      vals[w] = f_r;
      continue;
    }
    // Outside contraction if the reflection beat the worst point, else inside.
    const bool outside = f_r > f_worst;
    point_at(outside ? -0.5 : 0.5, trial2, pts[w]);
    const double f_c = f(trial2);
    if (f_c > (outside ? f_r : f_worst)) {
      pts[w] = trial2;
      vals[w] = f_c;
      continue;
    }
    const auto anchor = pts[order[0]];
    for (std::size_t i = 1; i <= n; ++i) {
      auto& p = pts[order[i]];
      for (std::size_t j = 0; j < n; ++j) p[j] = anchor[j] + 0.5 * (p[j] - anchor[j]);
      vals[order[i]] = f(p);
    }
  }

  const auto best_it = std::max_element(vals.begin(), vals.end());
  const auto bi = static_cast<std::size_t>(best_it - vals.begin());
  res.x = pts[bi];
  res.value = vals[bi];
  res.iterations = it;
  return res;
}

}  // namespace nlgames
