#include "qwalk/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwalk/fit.hpp"

namespace qwalk {

namespace {
constexpr double kDiscTol = 1e-9;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }
}  // namespace

ReducedCoinDensity reduce_over_position(const WalkerState& state) {
  ReducedCoinDensity rho;
  double alpha = 0.0, beta = 0.0;
  Complex gamma{0.0, 0.0};
  for (std::size_t m = 0; m < state.up.size(); ++m) {
    alpha += std::norm(state.up[m]);
    beta += std::norm(state.down[m]);
    gamma += state.up[m] * std::conj(state.down[m]);
  }
  rho.alpha = alpha;
  rho.beta = beta;
  rho.gamma = gamma;
  return rho;
}

double von_neumann_entropy(const ReducedCoinDensity& rho) {
  const double det = rho.alpha * rho.beta - std::norm(rho.gamma);
  const double disc = 1.0 - 4.0 * det;
  if (disc < -kDiscTol || disc > 1.0 + kDiscTol) {
    throw NumericalError("reduced density matrix is not physical: 1-4 det = " +
                         std::to_string(disc));
  }
  const double root = std::sqrt(std::clamp(disc, 0.0, 1.0));
  const double lp = 0.5 * (1.0 + root);
  const double lm = 0.5 * (1.0 - root);
  const double s = -xlog2x(lp) - xlog2x(lm);
  return s == 0.0 ? 0.0 : s;  // flush -0.0 from the separable corner
}

double trace_distance(const ReducedCoinDensity& rho1,
                      const ReducedCoinDensity& rho2) {
  // rho1 - rho2 = [[d, g], [g*, -d]] with eigenvalues ±e, e = sqrt(d^2+|g|^2),
  // so (1/2)(|+e| + |-e|) = e.
  const double d = rho1.alpha - rho2.alpha;
  const Complex g = rho1.gamma - rho2.gamma;
  return std::sqrt(d * d + std::norm(g));
}

PowerLawFit asymptotic_fit(std::span<const int> times,
                           std::span<const double> distances, int t_min,
                           int t_max) {
  if (times.size() != distances.size()) {
    throw ValidationError("times and distances differ in length");
  }
  if (t_min > t_max || t_min < 1) {
    throw ValidationError("fit window [" + std::to_string(t_min) + ", " +
                          std::to_string(t_max) + "] is invalid");
  }
  std::vector<double> log_t, log_d;
  int zeros = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const int t = times[i];
    if (t < t_min || t > t_max) continue;
    if (distances[i] > 0.0) {
      log_t.push_back(std::log(static_cast<double>(t)));
      log_d.push_back(std::log(distances[i]));
    } else {
      ++zeros;
    }
  }
  if (log_t.size() < 8) {
    throw FitError("power-law fit needs at least 8 positive samples, found " +
                   std::to_string(log_t.size()));
  }
  const LinearFit line = linear_fit(log_t, log_d);
  PowerLawFit fit;
  fit.exponent = line.slope;
  fit.amplitude = std::exp(line.intercept);
  fit.r_squared = line.r_squared;
  fit.t_min = t_min;
  fit.t_max = t_max;
  fit.points_used = static_cast<int>(log_t.size());
  fit.zeros_excluded = zeros;
  return fit;
}

PowerLawFit asymptotic_fit_tail(std::span<const int> times,
                                std::span<const double> distances) {
  if (times.size() != distances.size()) {
    throw ValidationError("times and distances differ in length");
  }
  // Usable samples: t >= 1 with D above the noise floor.
  std::vector<int> usable;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= 1 && distances[i] > 1e-14) usable.push_back(times[i]);
  }
  if (usable.size() < 8) {
    throw FitError("no power-law tail: only " + std::to_string(usable.size()) +
                   " usable samples");
  }
  const std::size_t skip = usable.size() / 10;
  return asymptotic_fit(times, distances, usable[skip], usable.back());
}

}  // namespace qwalk
