#include "qwalk/entanglement.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qwalk/evolution.hpp"

using namespace qwalk;

namespace {

WalkerState up_at(int n0, int n_sites) {
  return make_localized_state({n0, {1.0, 0.0}, {0.0, 0.0}}, n_sites);
}

// Numerical reference: diagonalize the explicit 2x2 matrix.
double entropy_by_diagonalization(const ReducedCoinDensity& rho) {
  Eigen::Matrix2cd m;
  m(0, 0) = rho.alpha;
  m(0, 1) = rho.gamma;
  m(1, 0) = std::conj(rho.gamma);
  m(1, 1) = rho.beta;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m);
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double lambda = solver.eigenvalues()[i];
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

// PSD sample: draw a random pure two-site state so alpha*beta >= |gamma|^2
// automatically, then jitter toward mixedness by shrinking gamma.
ReducedCoinDensity random_density(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2 * M_PI);
  ReducedCoinDensity rho;
  rho.alpha = unit(rng);
  rho.beta = 1.0 - rho.alpha;
  const double gmax = std::sqrt(rho.alpha * rho.beta);
  const double g = gmax * unit(rng);
  const double arg = phase(rng);
  rho.gamma = Complex{g * std::cos(arg), g * std::sin(arg)};
  return rho;
}

}  // namespace

TEST_CASE("reduction of simple states") {
  const auto pure_up = reduce_over_position(up_at(4, 9));
  CHECK(pure_up.alpha == doctest::Approx(1.0));
  CHECK(pure_up.beta == doctest::Approx(0.0));
  CHECK(std::abs(pure_up.gamma) == doctest::Approx(0.0));

  // One Hadamard step: branches on disjoint sites, so gamma vanishes.
  const auto field = build_field(M_PI / 4, 0.0, 9);
  const auto split =
      reduce_over_position(apply_step(up_at(4, 9), field,
                                      Boundary::LightConeGuard));
  CHECK(split.alpha == doctest::Approx(0.5));
  CHECK(split.beta == doctest::Approx(0.5));
  CHECK(std::abs(split.gamma) < 1e-15);

  // Coin superposition on one site keeps gamma = 1/2.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const auto spinor = make_localized_state(
      {4, {inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}}, 9);
  const auto rho = reduce_over_position(spinor);
  CHECK(rho.alpha == doctest::Approx(0.5));
  CHECK(rho.beta == doctest::Approx(0.5));
  CHECK(rho.gamma.real() == doctest::Approx(0.5));
  CHECK(rho.gamma.imag() == doctest::Approx(0.0));
}

TEST_CASE("entropy of the canonical corners") {
  CHECK(von_neumann_entropy({1.0, 0.0, {0.0, 0.0}}) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy({0.5, 0.5, {0.0, 0.0}}) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy({0.5, 0.5, {0.5, 0.0}}) ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("entropy rejects non-physical matrices") {
  CHECK_THROWS_AS(von_neumann_entropy({0.5, 0.5, {0.9, 0.0}}),
                  NumericalError);
}

TEST_CASE("closed-form entropy matches 2x2 diagonalization on 1000 draws") {
  std::mt19937 rng(246813579);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rho = random_density(rng);
    const double closed = von_neumann_entropy(rho);
    const double numeric = entropy_by_diagonalization(rho);
    CHECK(std::abs(closed - numeric) < 1e-10);
    CHECK(closed >= -1e-12);
    CHECK(closed <= 1.0 + 1e-12);
  }
}

TEST_CASE("trace distance of reference pairs") {
  const ReducedCoinDensity up{1.0, 0.0, {0.0, 0.0}};
  const ReducedCoinDensity down{0.0, 1.0, {0.0, 0.0}};
  const ReducedCoinDensity mixed{0.5, 0.5, {0.0, 0.0}};
  const ReducedCoinDensity plus{0.5, 0.5, {0.5, 0.0}};
  CHECK(trace_distance(up, up) == 0.0);
  CHECK(trace_distance(up, down) == doctest::Approx(1.0));
  CHECK(trace_distance(mixed, plus) == doctest::Approx(0.5));
}

TEST_CASE("trace distance is symmetric and satisfies the triangle "
          "inequality") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_density(rng);
    const auto b = random_density(rng);
    const auto c = random_density(rng);
    CHECK(trace_distance(a, b) == trace_distance(b, a));
    CHECK(trace_distance(a, c) <=
          trace_distance(a, b) + trace_distance(b, c) + 1e-12);
    CHECK(trace_distance(a, b) >= 0.0);
    CHECK(trace_distance(a, b) <= 1.0 + 1e-12);
  }
}

TEST_CASE("entropy stays within [0,1] along an evolved trajectory") {
  const auto lattice = auto_lattice(200);
  const auto field = build_field(1.9, 0.6, lattice.n_sites);
  EvolutionConfig config;
  config.n0 = lattice.n0;
  config.n_steps = 200;
  const auto result = evolve(up_at(lattice.n0, lattice.n_sites), field,
                             config, {Probe::Entropy});
  for (double s : result.series.at(Probe::Entropy)) {
    CHECK(s >= -1e-9);
    CHECK(s <= 1.0 + 1e-9);
  }
}

TEST_CASE("product states carry zero entropy") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> phase(0.0, 2 * M_PI);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = phase(rng);
    const double b = phase(rng);
    const Complex u{std::cos(a / 2), 0.0};
    const Complex d{std::sin(a / 2) * std::cos(b),
                    std::sin(a / 2) * std::sin(b)};
    const auto state = make_localized_state({7, u, d}, 15);
    CHECK(von_neumann_entropy(reduce_over_position(state)) ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("exact synthetic power law is recovered") {
  std::vector<int> times;
  std::vector<double> values;
  for (int t = 0; t <= 600; ++t) {
    times.push_back(t);
    values.push_back(t == 0 ? 0.0 : 2.5 / static_cast<double>(t));
  }
  const auto fit = asymptotic_fit(times, values, 10, 600);
  CHECK(std::abs(fit.exponent + 1.0) < 1e-6);
  CHECK(fit.amplitude == doctest::Approx(2.5).epsilon(1e-6));
  CHECK(fit.r_squared > 0.999999);
  CHECK(fit.points_used == 591);
  CHECK(fit.zeros_excluded == 0);
}

TEST_CASE("zeros are excluded and counted") {
  std::vector<int> times;
  std::vector<double> values;
  for (int t = 1; t <= 40; ++t) {
    times.push_back(t);
    values.push_back(t % 2 == 0 ? 0.0 : 1.0 / t);
  }
  const auto fit = asymptotic_fit(times, values, 1, 40);
  CHECK(fit.zeros_excluded == 20);
  CHECK(fit.points_used == 20);
  CHECK(std::abs(fit.exponent + 1.0) < 1e-9);
}

TEST_CASE("fit errors") {
  std::vector<int> times{1, 2, 3, 4, 5, 6, 7};
  std::vector<double> values{1, 1, 1, 1, 1, 1, 1};
  CHECK_THROWS_AS(asymptotic_fit(times, values, 1, 7), FitError);
  CHECK_THROWS_AS(asymptotic_fit(times, values, 7, 1), ValidationError);
  std::vector<double> short_values{1, 1};
  CHECK_THROWS_AS(asymptotic_fit(times, short_values, 1, 7),
                  ValidationError);
  // All-zero distances leave nothing to fit.
  std::vector<double> zeros(times.size(), 0.0);
  CHECK_THROWS_AS(asymptotic_fit_tail(times, zeros), FitError);
}

TEST_CASE("homogeneous Hadamard trace distance follows a clean power law") {
  const auto lattice = auto_lattice(500);
  const auto field = build_field(M_PI / 4, 0.0, lattice.n_sites);
  EvolutionConfig config;
  config.n0 = lattice.n0;
  config.n_steps = 500;
  const auto result = evolve(up_at(lattice.n0, lattice.n_sites), field,
                             config, {Probe::Trace});
  const auto fit = asymptotic_fit(result.series.times,
                                  result.series.at(Probe::Trace), 50, 500);
  // The consecutive-step distance measures D ~ 0.4 * t^(-1/2): a band-edge
  // interference term in alpha and gamma sets the rate. Pin it tightly.
  CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(0.1));
  CHECK(fit.r_squared > 0.99);
}

TEST_CASE("nu=1 Hadamard-coin trace distance has no asymptotic limit") {
  const auto lattice = auto_lattice(500);
  const auto field = build_field(M_PI / 4, 1.0, lattice.n_sites);
  EvolutionConfig config;
  config.n0 = lattice.n0;
  config.n_steps = 500;
  const auto result = evolve(up_at(lattice.n0, lattice.n_sites), field,
                             config, {Probe::Trace});
  const auto fit = asymptotic_fit(result.series.times,
                                  result.series.at(Probe::Trace), 50, 500);
  CHECK((fit.r_squared < 0.5 || fit.exponent >= -0.1));
}
