#include "qwalk/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qwalk/csv.hpp"

namespace qwalk {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kUnitaryTol = 1e-10;
constexpr double kUnitCircleTol = 1e-9;
}  // namespace

double unitarity_defect(const FloquetMatrix& matrix) {
  const Eigen::MatrixXcd defect =
      matrix.u.adjoint() * matrix.u -
      Eigen::MatrixXcd::Identity(matrix.u.rows(), matrix.u.cols());
  return defect.cwiseAbs().maxCoeff();
}

FloquetMatrix build_floquet_matrix(const CoinField& field) {
  const int n_sites = field.n_sites();
  const auto c = field.cosines();
  const auto s = field.sines();
  FloquetMatrix matrix;
  matrix.n_sites = n_sites;
  matrix.u = Eigen::MatrixXcd::Zero(2 * n_sites, 2 * n_sites);
  auto up = [n_sites](int n) { return n; };
  auto down = [n_sites](int n) { return n_sites + n; };
  for (int n = 0; n < n_sites; ++n) {
    const int right = (n + 1 == n_sites) ? 0 : n + 1;
    const int left = (n == 0) ? n_sites - 1 : n - 1;
    const auto i = static_cast<std::size_t>(n);
    // U |up,n>   =  cos t(n) |up,n+1> + sin t(n) |down,n-1>
    matrix.u(up(right), up(n)) = c[i];
    matrix.u(down(left), up(n)) = s[i];
    // U |down,n> =  sin t(n) |up,n+1> - cos t(n) |down,n-1>
    matrix.u(up(right), down(n)) = s[i];
    matrix.u(down(left), down(n)) = -c[i];
  }
  return matrix;
}

QuasiEnergySpectrum quasi_energies(const FloquetMatrix& matrix) {
  const double defect = unitarity_defect(matrix);
  if (defect > kUnitaryTol) {
    throw ValidationError("one-step operator is not unitary: defect " +
                          std::to_string(defect));
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(matrix.u, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError(
        "complex eigensolver failed on a " + std::to_string(matrix.u.rows()) +
        "x" + std::to_string(matrix.u.cols()) +
        " operator (unitarity defect " + std::to_string(defect) + ")");
  }
  const auto& raw = solver.eigenvalues();
  const auto count = static_cast<std::size_t>(raw.size());

  QuasiEnergySpectrum spectrum;
  spectrum.eigenvalues.resize(count);
  spectrum.energies.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::complex<double> lambda = raw[static_cast<Eigen::Index>(k)];
    if (std::abs(std::abs(lambda) - 1.0) > kUnitCircleTol) {
      throw NumericalError("eigenvalue off the unit circle: |lambda| = " +
                           std::to_string(std::abs(lambda)));
    }
    double energy = std::arg(lambda);  // principal branch of -i log
    if (energy <= -M_PI) energy = M_PI;
    spectrum.eigenvalues[k] = lambda;
    spectrum.energies[k] = energy;
  }

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return spectrum.energies[a] < spectrum.energies[b];
  });
  QuasiEnergySpectrum sorted;
  sorted.eigenvalues.resize(count);
  sorted.energies.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    sorted.eigenvalues[k] = spectrum.eigenvalues[order[k]];
    sorted.energies[k] = spectrum.energies[order[k]];
  }
  return sorted;
}

namespace {

double wrap_to_branch(double energy) {
  while (energy > M_PI) energy -= kTwoPi;
  while (energy <= -M_PI) energy += kTwoPi;
  return energy;
}

}  // namespace

BandReport band_report(const QuasiEnergySpectrum& spectrum,
                       double gap_threshold, double degeneracy_tol,
                       int cluster_min) {
  const auto& energy = spectrum.energies;
  const std::size_t count = energy.size();
  if (count < 2) {
    throw ValidationError("band report needs at least 2 eigenvalues");
  }
  if (!std::is_sorted(energy.begin(), energy.end())) {
    throw ValidationError("band report expects a sorted spectrum");
  }

  BandReport report;
  report.gap_threshold = gap_threshold;
  report.degeneracy_tol = degeneracy_tol;
  report.cluster_min = cluster_min;

  // Circular spacings; index i is the spacing between E_i and E_{i+1 mod n}.
  std::vector<double> spacing(count);
  for (std::size_t i = 0; i + 1 < count; ++i) {
    spacing[i] = energy[i + 1] - energy[i];
  }
  spacing[count - 1] = energy[0] + kTwoPi - energy[count - 1];

  report.level_spacings.assign(spacing.begin(), spacing.end() - 1);

  for (std::size_t i = 0; i < count; ++i) {
    if (spacing[i] > gap_threshold) {
      SpectralGap gap;
      gap.lower = energy[i];
      gap.upper = energy[(i + 1) % count];
      gap.width = spacing[i];
      gap.wraps = (i + 1 == count);
      report.gaps.push_back(gap);
    }
  }

  // Bands: the circular complement of the gaps.
  if (report.gaps.empty()) {
    report.bands.push_back(
        Band{energy.front(), energy.back(), kTwoPi, true});
  } else {
    for (std::size_t g = 0; g < report.gaps.size(); ++g) {
      const auto& open = report.gaps[g];
      const auto& close = report.gaps[(g + 1) % report.gaps.size()];
      Band band;
      band.lower = open.upper;
      band.upper = close.lower;
      band.width = band.upper - band.lower;
      if (band.width < 0.0) {
        band.width += kTwoPi;
        band.wraps = true;
      }
      report.bands.push_back(band);
    }
  }

  // Flat clusters: cut the circle at the widest spacing so no run straddles
  // the seam, then grow runs anchored at their first member.
  const std::size_t cut =
      static_cast<std::size_t>(std::distance(
          spacing.begin(), std::max_element(spacing.begin(), spacing.end())));
  auto unwrapped = [&](std::size_t j) {
    const std::size_t idx = (cut + 1 + j) % count;
    double value = energy[idx];
    if (cut + 1 + j >= count) value += kTwoPi;
    return value;
  };
  std::size_t run_start = 0;
  for (std::size_t j = 1; j <= count; ++j) {
    const bool extends =
        j < count && unwrapped(j) - unwrapped(run_start) <= degeneracy_tol;
    if (!extends) {
      const std::size_t run_len = j - run_start;
      if (run_len >= static_cast<std::size_t>(cluster_min)) {
        double mean = 0.0;
        for (std::size_t r = run_start; r < j; ++r) mean += unwrapped(r);
        mean /= static_cast<double>(run_len);
        report.flat_clusters.push_back(
            FlatCluster{wrap_to_branch(mean), static_cast<int>(run_len)});
      }
      run_start = j;
    }
  }

  return report;
}

std::string spectrum_to_csv(const QuasiEnergySpectrum& spectrum) {
  std::ostringstream out;
  out << "k,re_lambda,im_lambda,energy\n";
  for (std::size_t k = 0; k < spectrum.energies.size(); ++k) {
    out << k << ',' << fmt_double(spectrum.eigenvalues[k].real()) << ','
        << fmt_double(spectrum.eigenvalues[k].imag()) << ','
        << fmt_double(spectrum.energies[k]) << '\n';
  }
  return out.str();
}

std::string band_report_to_json(const BandReport& report, double theta0,
                                double nu, int n_sites) {
  nlohmann::json j;
  j["theta0"] = theta0;
  j["nu"] = nu;
  j["n_sites"] = n_sites;
  j["periodic_seam"] = nu != 0.0;
  j["gap_threshold"] = report.gap_threshold;
  j["degeneracy_tol"] = report.degeneracy_tol;
  j["cluster_min"] = report.cluster_min;
  j["gaps"] = nlohmann::json::array();
  for (const auto& gap : report.gaps) {
    j["gaps"].push_back({{"lower", gap.lower},
                         {"upper", gap.upper},
                         {"width", gap.width},
                         {"wraps", gap.wraps}});
  }
  j["flat_clusters"] = nlohmann::json::array();
  for (const auto& cluster : report.flat_clusters) {
    j["flat_clusters"].push_back(
        {{"energy", cluster.energy}, {"multiplicity", cluster.multiplicity}});
  }
  j["bands"] = nlohmann::json::array();
  for (const auto& band : report.bands) {
    j["bands"].push_back({{"lower", band.lower},
                          {"upper", band.upper},
                          {"width", band.width},
                          {"wraps", band.wraps}});
  }
  j["level_spacings"] = report.level_spacings;
  return j.dump(2);
}

}  // namespace qwalk
