#include "qwalk/coin_field.hpp"

#include <mpfr.h>

#include <cmath>
#include <random>

#include "doctest.h"

using namespace qwalk;

namespace {

// Independent reduction at 512 bits (twice the library precision).
double oracle_angle(double theta0, double nu, long n) {
  mpfr_t x, e, two_pi;
  mpfr_inits2(512, x, e, two_pi, mpfr_ptr(nullptr));
  mpfr_set_si(x, n, MPFR_RNDN);
  mpfr_set_d(e, nu, MPFR_RNDN);
  mpfr_pow(x, x, e, MPFR_RNDN);
  mpfr_mul_d(x, x, theta0, MPFR_RNDN);
  mpfr_const_pi(two_pi, MPFR_RNDN);
  mpfr_mul_ui(two_pi, two_pi, 2, MPFR_RNDN);
  mpfr_fmod(x, x, two_pi, MPFR_RNDN);
  if (mpfr_sgn(x) < 0) mpfr_add(x, x, two_pi, MPFR_RNDN);
  const double out = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clears(x, e, two_pi, mpfr_ptr(nullptr));
  return out;
}

}  // namespace

TEST_CASE("angle_at basics") {
  CHECK(angle_at(M_PI / 4, 0.0, 7) == M_PI / 4);
  CHECK(std::abs(angle_at(M_PI / 4, 0.5, 4) - M_PI / 2) < 1e-15);
  // 5 * pi/2 reduces to pi/2.
  CHECK(std::abs(angle_at(M_PI / 2, 1.0, 5) - M_PI / 2) < 1e-12);
  CHECK_THROWS_AS(angle_at(M_PI / 4, 1.0, -1), IndexError);
  CHECK_THROWS_AS(angle_at(M_PI / 4, -0.5, 3), ValidationError);
}

TEST_CASE("site zero conventions") {
  // 0^0 = 1 so nu = 0 is homogeneous everywhere, including site 0.
  CHECK(angle_at(M_PI / 3, 0.0, 0) == M_PI / 3);
  // 0^nu = 0 for nu > 0.
  CHECK(angle_at(M_PI / 3, 0.7, 0) == 0.0);
}

TEST_CASE("coin matrices for the named special cases") {
  const auto hadamard = coin_matrix(M_PI / 4);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(hadamard.m[0][0] == doctest::Approx(inv_sqrt2).epsilon(1e-15));
  CHECK(hadamard.m[0][1] == doctest::Approx(inv_sqrt2).epsilon(1e-15));
  CHECK(hadamard.m[1][0] == doctest::Approx(inv_sqrt2).epsilon(1e-15));
  CHECK(hadamard.m[1][1] == doctest::Approx(-inv_sqrt2).epsilon(1e-15));

  const auto pauli_x = coin_matrix(M_PI / 2);
  CHECK(std::abs(pauli_x.m[0][0]) < 1e-15);
  CHECK(pauli_x.m[0][1] == doctest::Approx(1.0));
  CHECK(pauli_x.m[1][0] == doctest::Approx(1.0));
  CHECK(std::abs(pauli_x.m[1][1]) < 1e-15);

  const auto pauli_z = coin_matrix(0.0);
  CHECK(pauli_z.m[0][0] == 1.0);
  CHECK(pauli_z.m[0][1] == 0.0);
  CHECK(pauli_z.m[1][0] == 0.0);
  CHECK(pauli_z.m[1][1] == -1.0);
}

TEST_CASE("build_field tabulates the expected angles") {
  const auto homogeneous = build_field(M_PI / 4, 0.0, 8);
  for (int n = 0; n < 8; ++n) CHECK(homogeneous.angle(n) == M_PI / 4);

  const auto linear = build_field(M_PI / 2, 1.0, 4);
  CHECK(linear.angle(0) == 0.0);
  CHECK(std::abs(linear.angle(1) - M_PI / 2) < 1e-15);
  CHECK(std::abs(linear.angle(2) - M_PI) < 1e-15);
  CHECK(std::abs(linear.angle(3) - 3 * M_PI / 2) < 1e-15);

  const auto small = build_field(M_PI / 4, 1.0, 3);
  CHECK(small.angle(0) == 0.0);
  CHECK(std::abs(small.angle(1) - M_PI / 4) < 1e-15);
  CHECK(std::abs(small.angle(2) - M_PI / 2) < 1e-15);

  CHECK_THROWS_AS(build_field(M_PI / 4, 0.0, 1), ValidationError);
}

TEST_CASE("nu=1 restores the arithmetic progression of angles") {
  const double theta0 = 0.3141;
  const auto field = build_field(theta0, 1.0, 64);
  for (int n = 0; n < 64; ++n) {
    CHECK(std::abs(field.angle(n) - oracle_angle(theta0, 1.0, n)) < 1e-13);
  }
}

TEST_CASE("angles match the high-precision reduction for huge arguments") {
  // nu = 4 at n = 2047 puts theta0 * n^nu near 1e14; the tables must still
  // carry full double precision after the mod-2pi reduction.
  const double theta0 = 5.1234567;
  const double nu = 4.0;
  const auto field = build_field(theta0, nu, 2048);
  for (long n : {1L, 17L, 255L, 1024L, 2046L, 2047L}) {
    const double expected = oracle_angle(theta0, nu, n);
    CHECK(std::abs(field.angle(static_cast<int>(n)) - expected) < 1e-12);
  }
}

TEST_CASE("tables agree with the angles") {
  const auto field = build_field(1.234, 0.75, 50);
  for (int n = 0; n < 50; ++n) {
    CHECK(std::abs(field.cosines()[n] - std::cos(field.angle(n))) < 1e-14);
    CHECK(std::abs(field.sines()[n] - std::sin(field.angle(n))) < 1e-14);
  }
}

TEST_CASE("every coin is an orthogonal reflection and its own inverse") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  for (int trial = 0; trial < 200; ++trial) {
    const auto coin = coin_matrix(angle(rng));
    const auto& m = coin.m;
    // M^T M = I and M M = I (symmetric reflection), det = -1.
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double mtm = 0.0, mm = 0.0;
        for (int k = 0; k < 2; ++k) {
          mtm += m[k][i] * m[k][j];
          mm += m[i][k] * m[k][j];
        }
        const double expected = i == j ? 1.0 : 0.0;
        CHECK(std::abs(mtm - expected) < 1e-12);
        CHECK(std::abs(mm - expected) < 1e-12);
      }
    }
    CHECK(std::abs(m[0][0] * m[1][1] - m[0][1] * m[1][0] + 1.0) < 1e-12);
  }
}

TEST_CASE("homogeneous field equals N copies of the single coin") {
  const double theta0 = 2.345;
  const auto field = build_field(theta0, 0.0, 16);
  const auto reference = coin_matrix(theta0);
  for (int n = 0; n < 16; ++n) {
    const auto coin = field.coin(n);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CHECK(coin.m[i][j] == reference.m[i][j]);
      }
    }
  }
}
