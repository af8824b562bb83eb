#pragma once

#include <set>

#include "qwalk/coin_field.hpp"
#include "qwalk/lattice_state.hpp"
#include "qwalk/observables.hpp"

namespace qwalk {

/// Boundary treatment of the finite lattice.
///   Periodic       indices wrap mod N; matches the diagonalized one-step
///                  operator.
///   LightConeGuard the run is rejected unless amplitudes provably never
///                  reach sites 0 or N-1 (ballistic speed is one site per
///                  step), making the finite simulation exactly equal to the
///                  infinite-lattice one.
enum class Boundary { Periodic, LightConeGuard };

struct EvolutionConfig {
  int n_steps = 0;
  Boundary boundary = Boundary::LightConeGuard;
  int record_every = 1;
  /// Initial site, used by the guard and by the survival-probability probes.
  int n0 = 0;
};

struct EvolveResult {
  ObservableSeries series;
  WalkerState final_state;
};

/// One application of U = S (C ⊗ I): the per-site coin
///   a~_n = cos t(n) a_n + sin t(n) b_n
///   b~_n = sin t(n) a_n - cos t(n) b_n
/// followed by the spin-conditioned shift a'_{n+1} = a~_n, b'_{n-1} = b~_n.
/// Under Periodic the shift wraps mod N; under LightConeGuard a GuardError is
/// thrown if any boundary amplitude is nonzero before the step.
WalkerState apply_step(const WalkerState& state, const CoinField& field,
                       Boundary boundary);

/// Run config.n_steps applications of U from state0, sampling the requested
/// probes at t = 0, every record_every steps, and at the final step. The
/// Trace probe compares the reduced coin state of consecutive recorded
/// samples (0 at the first sample). Deterministic: fixed summation order,
/// no allocation in the step loop.
EvolveResult evolve(const WalkerState& state0, const CoinField& field,
                    const EvolutionConfig& config,
                    const std::set<Probe>& probes);

/// Smallest lattice on which a guarded run of n_steps from the center cannot
/// touch the boundary: N = 2*(n_steps + margin) + 1, n0 = n_steps + margin.
struct AutoLattice {
  int n_sites;
  int n0;
};
AutoLattice auto_lattice(int n_steps, int margin = 2);

}  // namespace qwalk
