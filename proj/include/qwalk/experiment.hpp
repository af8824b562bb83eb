#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/lattice_state.hpp"

namespace qwalk {

/// Per-trajectory settings shared by every cell of a sweep.
struct RunSettings {
  int n_steps = 500;
  int record_every = 1;
  int n_sites = 0;  // 0: auto-size to 2*(n_steps+2)+1
  int n0 = -1;      // -1: lattice center
  Complex spin_up{1.0, 0.0};
  Complex spin_down{0.0, 0.0};
};

struct SweepSpec {
  std::vector<double> theta0_grid;
  std::vector<double> nu_grid;
  RunSettings run;
  int threads = 0;  // 0: hardware concurrency
};

/// Long-time averages over the (theta0, nu) grid, stored row-major with nu
/// fastest: cell(i_theta, i_nu) = i_theta * nu_grid.size() + i_nu.
/// baseline_entropy holds the homogeneous (nu = 0) reference per theta0 and
/// mask marks cells whose entanglement strictly exceeds it.
struct DiagramResult {
  std::vector<double> theta0_grid;
  std::vector<double> nu_grid;
  std::vector<double> sp0;
  std::vector<double> sp1;
  std::vector<double> ipr;
  std::vector<double> ipr_norm;
  std::vector<double> entropy;
  std::vector<double> baseline_entropy;
  std::vector<std::uint8_t> mask;
  int n_sites = 0;
  int n0 = 0;
  int n_steps = 0;
  int record_every = 1;

  std::size_t cell(std::size_t i_theta, std::size_t i_nu) const {
    return i_theta * nu_grid.size() + i_nu;
  }
};

/// Run one guarded trajectory per grid cell (in parallel; every cell is a
/// pure function of its parameters) and reduce each to long-time averages.
/// Homogeneous baselines come from the nu = 0 column when present, otherwise
/// from dedicated runs, so the enhancement mask is self-consistent at any
/// resolution. ipr_norm is ipr scaled by the sweep-wide maximum. Results are
/// identical whether cells run serially or in parallel.
DiagramResult run_sweep(const SweepSpec& spec);

/// Strict comparison against the homogeneous baseline, no minimum gain.
/// Throws ValidationError when baselines are missing.
std::vector<std::uint8_t> enhancement_mask(const DiagramResult& result);

/// Long-format CSV: theta0, nu, sp0, sp1, ipr, ipr_norm, entropy, mask.
/// Rows ordered by (theta0 index, nu index); byte-stable across reruns.
std::string sweep_to_csv(const DiagramResult& result);

}  // namespace qwalk
