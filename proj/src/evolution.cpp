#include "qwalk/evolution.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "qwalk/entanglement.hpp"

namespace qwalk {

namespace {

// Coin-then-shift over source sites [lo, hi], writing [lo-1, hi+1]. The
// destination is zeroed on the written range first; each target cell then
// receives exactly one contribution, so the pass is a plain assignment loop
// in ascending n (fixed summation order).
void step_window(const WalkerState& src, WalkerState& dst,
                 const CoinField& field, int lo, int hi) {
  const auto c = field.cosines();
  const auto s = field.sines();
  std::fill(dst.up.begin() + (lo - 1), dst.up.begin() + (hi + 2),
            Complex{0.0, 0.0});
  std::fill(dst.down.begin() + (lo - 1), dst.down.begin() + (hi + 2),
            Complex{0.0, 0.0});
  for (int n = lo; n <= hi; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const Complex a = src.up[i];
    const Complex b = src.down[i];
    dst.up[i + 1] = c[i] * a + s[i] * b;
    dst.down[i - 1] = s[i] * a - c[i] * b;
  }
}

void step_periodic(const WalkerState& src, WalkerState& dst,
                   const CoinField& field) {
  const auto c = field.cosines();
  const auto s = field.sines();
  const int n_sites = src.n_sites();
  for (int n = 0; n < n_sites; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const Complex a = src.up[i];
    const Complex b = src.down[i];
    const auto i_up = static_cast<std::size_t>(n + 1 == n_sites ? 0 : n + 1);
    const auto i_dn = static_cast<std::size_t>(n == 0 ? n_sites - 1 : n - 1);
    dst.up[i_up] = c[i] * a + s[i] * b;
    dst.down[i_dn] = s[i] * a - c[i] * b;
  }
}

void require_same_lattice(const WalkerState& state, const CoinField& field) {
  if (state.n_sites() != field.n_sites()) {
    throw ValidationError("state has " + std::to_string(state.n_sites()) +
                          " sites but coin field has " +
                          std::to_string(field.n_sites()));
  }
}

// Index range [lo, hi] carrying all nonzero amplitude; {n, n} fallback for an
// all-zero state.
std::pair<int, int> support_bounds(const WalkerState& state, int fallback) {
  int lo = -1, hi = -1;
  for (int n = 0; n < state.n_sites(); ++n) {
    const auto i = static_cast<std::size_t>(n);
    if (state.up[i] != Complex{0.0, 0.0} ||
        state.down[i] != Complex{0.0, 0.0}) {
      if (lo < 0) lo = n;
      hi = n;
    }
  }
  if (lo < 0) return {fallback, fallback};
  return {lo, hi};
}

}  // namespace

WalkerState apply_step(const WalkerState& state, const CoinField& field,
                       Boundary boundary) {
  require_same_lattice(state, field);
  const int n_sites = state.n_sites();
  WalkerState next;
  next.up.assign(state.up.size(), Complex{0.0, 0.0});
  next.down.assign(state.down.size(), Complex{0.0, 0.0});
  if (boundary == Boundary::Periodic) {
    step_periodic(state, next, field);
    return next;
  }
  const auto last = static_cast<std::size_t>(n_sites - 1);
  if (state.up[0] != Complex{0.0, 0.0} || state.down[0] != Complex{0.0, 0.0} ||
      state.up[last] != Complex{0.0, 0.0} ||
      state.down[last] != Complex{0.0, 0.0}) {
    throw GuardError("amplitude reached the lattice boundary; enlarge the "
                     "lattice or use the periodic boundary");
  }
  step_window(state, next, field, 1, n_sites - 2);
  return next;
}

EvolveResult evolve(const WalkerState& state0, const CoinField& field,
                    const EvolutionConfig& config,
                    const std::set<Probe>& probes) {
  require_same_lattice(state0, field);
  const int n_sites = state0.n_sites();
  const int n_steps = config.n_steps;
  if (n_steps < 0) {
    throw ValidationError("step count must be non-negative");
  }
  if (config.record_every < 1) {
    throw ValidationError("record stride must be at least 1");
  }
  if (config.n0 < 0 || config.n0 >= n_sites) {
    throw IndexError("initial site " + std::to_string(config.n0) +
                     " outside lattice [0, " + std::to_string(n_sites) + ")");
  }
  const bool want_sp1 = probes.count(Probe::Sp1) > 0;
  if (want_sp1 && (config.n0 - 1 < 0 || config.n0 + 1 >= n_sites)) {
    throw IndexError("sp1 window around site " + std::to_string(config.n0) +
                     " leaves the lattice");
  }

  auto [lo, hi] = support_bounds(state0, config.n0);
  if (config.boundary == Boundary::LightConeGuard) {
    const int room = std::min(lo, n_sites - 1 - hi) - 1;
    if (n_steps > room) {
      throw GuardError(
          "light-cone guard: " + std::to_string(n_steps) +
          " steps from support [" + std::to_string(lo) + ", " +
          std::to_string(hi) + "] would reach the boundary of a " +
          std::to_string(n_sites) + "-site lattice (max " +
          std::to_string(std::max(room, 0)) + ")");
    }
  }

  const bool want_rho =
      probes.count(Probe::Entropy) > 0 || probes.count(Probe::Trace) > 0;

  EvolveResult result;
  for (Probe p : probes) result.series.values[p] = {};

  WalkerState cur = state0;
  WalkerState next;
  next.up.assign(cur.up.size(), Complex{0.0, 0.0});
  next.down.assign(cur.down.size(), Complex{0.0, 0.0});

  ReducedCoinDensity prev_rho;
  bool have_prev_rho = false;
  auto record = [&](int t) {
    result.series.times.push_back(t);
    ReducedCoinDensity rho;
    if (want_rho) rho = reduce_over_position(cur);
    for (Probe p : probes) {
      double v = 0.0;
      switch (p) {
        case Probe::Sp0: v = survival_probability(cur, config.n0, 0); break;
        case Probe::Sp1: v = survival_probability(cur, config.n0, 1); break;
        case Probe::Ipr: v = inverse_participation_ratio(cur); break;
        case Probe::Entropy: v = von_neumann_entropy(rho); break;
        case Probe::Trace:
          v = have_prev_rho ? trace_distance(rho, prev_rho) : 0.0;
          break;
      }
      result.series.values[p].push_back(v);
    }
    if (want_rho) {
      prev_rho = rho;
      have_prev_rho = true;
    }
  };

  record(0);
  for (int t = 1; t <= n_steps; ++t) {
    if (config.boundary == Boundary::Periodic) {
      step_periodic(cur, next, field);
    } else {
      step_window(cur, next, field, lo, hi);
      --lo;
      ++hi;
      assert(lo >= 1 && hi <= n_sites - 2);
    }
    std::swap(cur, next);
    if (t % config.record_every == 0 || t == n_steps) record(t);
  }

  result.final_state = std::move(cur);
  return result;
}

AutoLattice auto_lattice(int n_steps, int margin) {
  if (n_steps < 0 || margin < 1) {
    throw ValidationError("auto lattice needs n_steps >= 0 and margin >= 1");
  }
  return AutoLattice{2 * (n_steps + margin) + 1, n_steps + margin};
}

}  // namespace qwalk
