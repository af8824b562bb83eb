#pragma once

#include <span>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/lattice_state.hpp"

namespace qwalk {

/// 2x2 reduced coin density matrix [[alpha, gamma], [gamma*, beta]] obtained
/// by tracing the pure walker state over position:
///   alpha = sum_m |a_m|^2,  beta = sum_m |b_m|^2,  gamma = sum_m a_m b_m*.
/// alpha + beta = 1 and alpha*beta >= |gamma|^2 for any pure global state.
struct ReducedCoinDensity {
  double alpha = 1.0;
  double beta = 0.0;
  Complex gamma{0.0, 0.0};
};

/// Least-squares power law D ~ amplitude * t^exponent fitted on log-log axes.
struct PowerLawFit {
  double exponent = 0.0;
  double amplitude = 0.0;
  double r_squared = 0.0;
  int t_min = 0;
  int t_max = 0;
  int points_used = 0;
  int zeros_excluded = 0;
};

ReducedCoinDensity reduce_over_position(const WalkerState& state);

/// S = -l+ log2 l+ - l- log2 l- with l± = (1 ± sqrt(1 - 4(ab - |g|^2)))/2.
/// Returns a value in [0, 1]; 0 log 0 is taken as 0. Throws NumericalError
/// when the discriminant falls outside [0, 1] beyond tolerance (the matrix is
/// not a valid density matrix).
double von_neumann_entropy(const ReducedCoinDensity& rho);

/// (1/2) sum |eigenvalues of rho1 - rho2|. The difference of two reduced coin
/// states is traceless Hermitian, so this is sqrt(d^2 + |g|^2) with
/// d = alpha1 - alpha2 and g = gamma1 - gamma2, via the exact 2x2 eigenvalues.
double trace_distance(const ReducedCoinDensity& rho1,
                      const ReducedCoinDensity& rho2);

/// Fit log D against log t on samples with t_min <= t <= t_max. Samples with
/// D <= 0 are excluded and counted in zeros_excluded. Throws FitError when
/// fewer than 8 usable points remain.
PowerLawFit asymptotic_fit(std::span<const int> times,
                           std::span<const double> distances, int t_min,
                           int t_max);

/// Default fit window: the last 90% of the positive samples.
/// first_positive_fraction = 0.1 skips the leading 10% of usable times.
PowerLawFit asymptotic_fit_tail(std::span<const int> times,
                                std::span<const double> distances);

}  // namespace qwalk
