#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

using Complex = std::complex<double>;

/// Spinor wavefunction of the walker on a finite 1-D lattice of N sites.
/// Amplitudes are stored as two parallel contiguous arrays (spin-up a_n,
/// spin-down b_n) so the conditional shift is a rotation of contiguous data.
///
/// Invariants: up.size() == down.size() == n_sites >= 2 and
/// sum_n |a_n|^2 + |b_n|^2 = 1 (within 1e-10) after construction and after
/// every evolution step.
struct WalkerState {
  std::vector<Complex> up;
  std::vector<Complex> down;

  int n_sites() const { return static_cast<int>(up.size()); }

  /// sum_n |a_n|^2 + |b_n|^2
  double norm_squared() const;
};

/// Localized initial condition: spinor (spin_up_amp, spin_down_amp) at site n0.
struct InitialStateSpec {
  int n0 = 0;
  Complex spin_up_amp{1.0, 0.0};
  Complex spin_down_amp{0.0, 0.0};
};

/// Build the state |spinor> ⊗ |n0> on a lattice of n_sites sites.
/// Throws IndexError if n0 is outside [0, n_sites) and ValidationError if the
/// spinor is not normalized (|u|^2 + |d|^2 = 1 within 1e-12) or n_sites < 2.
WalkerState make_localized_state(const InitialStateSpec& spec, int n_sites);

/// Spin-summed site probabilities p_n = |a_n|^2 + |b_n|^2.
std::vector<double> position_probabilities(const WalkerState& state);

/// JSON text of the form {"n_sites": N, "up": [[re,im],...], "down": [...]}.
std::string state_to_json(const WalkerState& state);

/// Inverse of state_to_json. Validates shape and normalization.
WalkerState state_from_json(const std::string& text);

}  // namespace qwalk
