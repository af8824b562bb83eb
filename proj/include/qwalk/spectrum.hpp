#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qwalk/coin_field.hpp"
#include "qwalk/errors.hpp"

namespace qwalk {

/// Dense one-step walk operator in the basis {|up,n>, |down,n>}, n = 0..N-1
/// (spin-up block first). Built with periodic closure, so the operator is
/// exactly unitary; an inhomogeneous field then has a seam between sites N-1
/// and 0 which affects O(1) of the 2N eigenvalues.
struct FloquetMatrix {
  Eigen::MatrixXcd u;
  int n_sites = 0;
};

/// Eigenvalues of the one-step operator and their eigenphases
/// E_k = -i log(lambda_k) on the branch (-pi, pi], sorted ascending by E.
struct QuasiEnergySpectrum {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<double> energies;
};

struct SpectralGap {
  double lower = 0.0;  // highest energy below the gap
  double upper = 0.0;  // lowest energy above the gap
  double width = 0.0;
  bool wraps = false;  // gap crosses the branch cut at ±pi
};

struct FlatCluster {
  double energy = 0.0;
  int multiplicity = 0;
};

struct Band {
  double lower = 0.0;
  double upper = 0.0;
  double width = 0.0;
  bool wraps = false;
};

struct BandReport {
  std::vector<SpectralGap> gaps;
  std::vector<FlatCluster> flat_clusters;
  std::vector<Band> bands;
  std::vector<double> level_spacings;  // consecutive differences, sorted order
  double gap_threshold = 0.0;
  double degeneracy_tol = 0.0;
  int cluster_min = 0;
};

inline constexpr double kDefaultGapThreshold = 0.05;
inline constexpr double kDefaultDegeneracyTol = 1e-6 * 6.283185307179586;
inline constexpr int kDefaultClusterMin = 4;

/// max |(U^H U - I)_ij|
double unitarity_defect(const FloquetMatrix& matrix);

/// Assemble U = S (C ⊗ I) column by column with periodic closure.
FloquetMatrix build_floquet_matrix(const CoinField& field);

/// Full eigendecomposition (dense Schur-based solver for general complex
/// matrices). Requires the input to be unitary within 1e-10; throws
/// NumericalError if the solver fails or an eigenvalue leaves the unit
/// circle by more than 1e-9.
QuasiEnergySpectrum quasi_energies(const FloquetMatrix& matrix);

/// Gap, band and degeneracy analysis of a sorted spectrum, treating the
/// energies circularly on (-pi, pi]. Gaps are spacings wider than
/// gap_threshold; flat clusters are runs of at least cluster_min eigenvalues
/// within degeneracy_tol of the first member of the run.
BandReport band_report(const QuasiEnergySpectrum& spectrum,
                       double gap_threshold = kDefaultGapThreshold,
                       double degeneracy_tol = kDefaultDegeneracyTol,
                       int cluster_min = kDefaultClusterMin);

/// CSV columns: k, re_lambda, im_lambda, energy (sorted ascending by energy).
std::string spectrum_to_csv(const QuasiEnergySpectrum& spectrum);

/// Band report plus field parameters as JSON. The periodic_seam flag records
/// that an inhomogeneous field was closed into a ring between sites N-1 and 0.
std::string band_report_to_json(const BandReport& report, double theta0,
                                double nu, int n_sites);

}  // namespace qwalk
