#include "qwalk/coin_field.hpp"

#include <mpfr.h>

#include <cmath>
#include <string>

namespace qwalk {

namespace {

// 256 bits is far more than needed to resolve theta0 * n^nu mod 2pi to full
// double precision at desk scale (n <= ~1e6, nu <= ~8).
constexpr mpfr_prec_t kPrec = 256;

struct ReducedAngle {
  double angle;
  double cosine;
  double sine;
};

ReducedAngle reduce(double theta0, double nu, long n) {
  mpfr_t x, e, two_pi, c, s;
  mpfr_inits2(kPrec, x, e, two_pi, c, s, mpfr_ptr(nullptr));

  // x = theta0 * n^nu, exact inputs, one rounding per operation.
  mpfr_set_si(x, n, MPFR_RNDN);
  mpfr_set_d(e, nu, MPFR_RNDN);
  mpfr_pow(x, x, e, MPFR_RNDN);  // n^nu; mpfr defines 0^0 = 1
  mpfr_mul_d(x, x, theta0, MPFR_RNDN);

  mpfr_const_pi(two_pi, MPFR_RNDN);
  mpfr_mul_ui(two_pi, two_pi, 2, MPFR_RNDN);
  mpfr_fmod(x, x, two_pi, MPFR_RNDN);
  if (mpfr_sgn(x) < 0) mpfr_add(x, x, two_pi, MPFR_RNDN);

  mpfr_cos(c, x, MPFR_RNDN);
  mpfr_sin(s, x, MPFR_RNDN);

  ReducedAngle out{mpfr_get_d(x, MPFR_RNDN), mpfr_get_d(c, MPFR_RNDN),
                   mpfr_get_d(s, MPFR_RNDN)};
  mpfr_clears(x, e, two_pi, c, s, mpfr_ptr(nullptr));
  return out;
}

}  // namespace

double angle_at(double theta0, double nu, long n) {
  if (n < 0) {
    throw IndexError("site index must be non-negative, got " +
                     std::to_string(n));
  }
  if (nu < 0.0) {
    throw ValidationError("aperiodicity exponent must be non-negative, got " +
                          std::to_string(nu));
  }
  return reduce(theta0, nu, n).angle;
}

CoinMatrix coin_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return CoinMatrix{{{{c, s}, {s, -c}}}};
}

CoinField::CoinField(double theta0, double nu, int n_sites)
    : theta0_(theta0), nu_(nu) {
  if (n_sites < 2) {
    throw ValidationError("coin field needs at least 2 sites, got " +
                          std::to_string(n_sites));
  }
  if (nu < 0.0) {
    throw ValidationError("aperiodicity exponent must be non-negative, got " +
                          std::to_string(nu));
  }
  const auto count = static_cast<std::size_t>(n_sites);
  angles_.resize(count);
  cos_.resize(count);
  sin_.resize(count);
  for (std::size_t n = 0; n < count; ++n) {
    const ReducedAngle r = reduce(theta0, nu, static_cast<long>(n));
    angles_[n] = r.angle;
    cos_[n] = r.cosine;
    sin_[n] = r.sine;
  }
}

CoinField build_field(double theta0, double nu, int n_sites) {
  return CoinField(theta0, nu, n_sites);
}

}  // namespace qwalk
