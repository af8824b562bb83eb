#pragma once

#include <array>
#include <span>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

/// 2x2 real coin [[cos t, sin t], [sin t, -cos t]]: an orthogonal reflection
/// (det = -1, M*M = I).
struct CoinMatrix {
  std::array<std::array<double, 2>, 2> m;
};

/// Per-site rotation angle t(n) = theta0 * n^nu reduced mod 2pi.
/// n is the absolute lattice index starting at 0, with 0^0 := 1 (so nu = 0 is
/// exactly the homogeneous walk) and 0^nu := 0 for nu > 0. The reduction is
/// carried out in multi-precision arithmetic on the product theta0 * n^nu, so
/// the stored double angle is faithful even when n^nu is huge.
double angle_at(double theta0, double nu, long n);

/// The coin matrix for a single angle.
CoinMatrix coin_matrix(double theta);

/// Immutable per-site angle profile with precomputed cos/sin tables; the
/// evolution loop stays trig-free. The field is static: it never changes
/// during time evolution.
class CoinField {
 public:
  CoinField(double theta0, double nu, int n_sites);

  double theta0() const { return theta0_; }
  double nu() const { return nu_; }
  int n_sites() const { return static_cast<int>(angles_.size()); }

  double angle(int n) const { return angles_[static_cast<std::size_t>(n)]; }
  CoinMatrix coin(int n) const { return coin_matrix(angle(n)); }

  std::span<const double> angles() const { return angles_; }
  std::span<const double> cosines() const { return cos_; }
  std::span<const double> sines() const { return sin_; }

 private:
  double theta0_;
  double nu_;
  std::vector<double> angles_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Build the angle profile for n = 0..n_sites-1. Requires n_sites >= 2.
CoinField build_field(double theta0, double nu, int n_sites);

}  // namespace qwalk
