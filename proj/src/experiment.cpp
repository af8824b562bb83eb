#include "qwalk/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include "qwalk/csv.hpp"
#include "qwalk/entanglement.hpp"
#include "qwalk/observables.hpp"

namespace qwalk {

namespace {

struct CellAverages {
  double sp0 = 0.0;
  double sp1 = 0.0;
  double ipr = 0.0;
  double entropy = 0.0;
};

CellAverages run_cell(double theta0, double nu, int n_sites, int n0,
                      const RunSettings& run) {
  const CoinField field = build_field(theta0, nu, n_sites);
  const WalkerState state0 =
      make_localized_state({n0, run.spin_up, run.spin_down}, n_sites);
  EvolutionConfig config;
  config.n_steps = run.n_steps;
  config.boundary = Boundary::LightConeGuard;
  config.record_every = run.record_every;
  config.n0 = n0;
  const auto result = evolve(state0, field, config,
                             {Probe::Sp0, Probe::Sp1, Probe::Ipr,
                              Probe::Entropy});
  CellAverages out;
  out.sp0 = long_time_average(result.series, Probe::Sp0);
  out.sp1 = long_time_average(result.series, Probe::Sp1);
  out.ipr = long_time_average(result.series, Probe::Ipr);
  out.entropy = long_time_average(result.series, Probe::Entropy);
  return out;
}

}  // namespace

DiagramResult run_sweep(const SweepSpec& spec) {
  if (spec.theta0_grid.empty() || spec.nu_grid.empty()) {
    throw ValidationError("sweep grids must be non-empty");
  }
  int n_sites = spec.run.n_sites;
  int n0 = spec.run.n0;
  if (n_sites <= 0) {
    const AutoLattice lattice = auto_lattice(spec.run.n_steps);
    n_sites = lattice.n_sites;
    if (n0 < 0) n0 = lattice.n0;
  } else if (n0 < 0) {
    n0 = n_sites / 2;
  }
  // The guard depends only on (n_sites, n0, n_steps), shared by every cell;
  // reject the whole sweep up front rather than from inside a worker.
  if (spec.run.n_steps > std::min(n0, n_sites - 1 - n0) - 1) {
    throw GuardError(
        "light-cone guard violated for every sweep cell, first at theta0=" +
        fmt_double(spec.theta0_grid.front()) + " nu=" +
        fmt_double(spec.nu_grid.front()) + ": " +
        std::to_string(spec.run.n_steps) + " steps from site " +
        std::to_string(n0) + " on " + std::to_string(n_sites) + " sites");
  }

  const std::size_t n_theta = spec.theta0_grid.size();
  const std::size_t n_nu = spec.nu_grid.size();
  const std::size_t n_cells = n_theta * n_nu;

  // nu = 0 column (exact), if the grid has one, doubles as the baseline.
  std::size_t nu0_col = n_nu;
  for (std::size_t j = 0; j < n_nu; ++j) {
    if (spec.nu_grid[j] == 0.0) {
      nu0_col = j;
      break;
    }
  }
  const bool dedicated_baselines = nu0_col == n_nu;
  const std::size_t n_jobs = n_cells + (dedicated_baselines ? n_theta : 0);

  std::vector<CellAverages> cells(n_cells);
  std::vector<CellAverages> baselines(dedicated_baselines ? n_theta : 0);
  std::vector<std::exception_ptr> failures(n_jobs);

  auto run_job = [&](std::size_t job) {
    try {
      if (job < n_cells) {
        const std::size_t i_theta = job / n_nu;
        const std::size_t i_nu = job % n_nu;
        cells[job] = run_cell(spec.theta0_grid[i_theta], spec.nu_grid[i_nu],
                              n_sites, n0, spec.run);
      } else {
        const std::size_t i_theta = job - n_cells;
        baselines[i_theta] =
            run_cell(spec.theta0_grid[i_theta], 0.0, n_sites, n0, spec.run);
      }
    } catch (...) {
      failures[job] = std::current_exception();
    }
  };

  unsigned n_threads = spec.threads > 0
                           ? static_cast<unsigned>(spec.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, n_jobs);
  if (n_threads <= 1) {
    for (std::size_t job = 0; job < n_jobs; ++job) run_job(job);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t job = cursor.fetch_add(1);
          if (job >= n_jobs) return;
          run_job(job);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t job = 0; job < n_jobs; ++job) {
    if (failures[job]) {
      const std::size_t flat = job < n_cells ? job : job - n_cells;
      const std::size_t i_theta = job < n_cells ? flat / n_nu : flat;
      const double nu = job < n_cells ? spec.nu_grid[flat % n_nu] : 0.0;
      try {
        std::rethrow_exception(failures[job]);
      } catch (const std::exception& e) {
        throw ValidationError("sweep cell theta0=" +
                              fmt_double(spec.theta0_grid[i_theta]) + " nu=" +
                              fmt_double(nu) + " failed: " + e.what());
      }
    }
  }

  DiagramResult result;
  result.theta0_grid = spec.theta0_grid;
  result.nu_grid = spec.nu_grid;
  result.n_sites = n_sites;
  result.n0 = n0;
  result.n_steps = spec.run.n_steps;
  result.record_every = spec.run.record_every;
  result.sp0.resize(n_cells);
  result.sp1.resize(n_cells);
  result.ipr.resize(n_cells);
  result.entropy.resize(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) {
    result.sp0[i] = cells[i].sp0;
    result.sp1[i] = cells[i].sp1;
    result.ipr[i] = cells[i].ipr;
    result.entropy[i] = cells[i].entropy;
  }

  result.baseline_entropy.resize(n_theta);
  for (std::size_t i = 0; i < n_theta; ++i) {
    result.baseline_entropy[i] = dedicated_baselines
                                     ? baselines[i].entropy
                                     : cells[result.cell(i, nu0_col)].entropy;
  }

  // Normalize IPR by the sweep-wide maximum; first maximum scales to 1.0.
  const std::size_t i_max = static_cast<std::size_t>(
      std::distance(result.ipr.begin(),
                    std::max_element(result.ipr.begin(), result.ipr.end())));
  const double max_ipr = result.ipr[i_max];
  result.ipr_norm.resize(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) {
    result.ipr_norm[i] = result.ipr[i] / max_ipr;
  }

  result.mask = enhancement_mask(result);
  return result;
}

std::vector<std::uint8_t> enhancement_mask(const DiagramResult& result) {
  const std::size_t n_theta = result.theta0_grid.size();
  const std::size_t n_nu = result.nu_grid.size();
  if (result.baseline_entropy.size() != n_theta) {
    throw ValidationError("enhancement mask needs one homogeneous baseline "
                          "per theta0 column");
  }
  if (result.entropy.size() != n_theta * n_nu) {
    throw ValidationError("entropy grid size does not match the axes");
  }
  std::vector<std::uint8_t> mask(n_theta * n_nu);
  for (std::size_t i = 0; i < n_theta; ++i) {
    for (std::size_t j = 0; j < n_nu; ++j) {
      const std::size_t c = result.cell(i, j);
      mask[c] = result.entropy[c] > result.baseline_entropy[i] ? 1 : 0;
    }
  }
  return mask;
}

std::string sweep_to_csv(const DiagramResult& result) {
  std::ostringstream out;
  out << "theta0,nu,sp0,sp1,ipr,ipr_norm,entropy,mask\n";
  for (std::size_t i = 0; i < result.theta0_grid.size(); ++i) {
    for (std::size_t j = 0; j < result.nu_grid.size(); ++j) {
      const std::size_t c = result.cell(i, j);
      out << fmt_double(result.theta0_grid[i]) << ','
          << fmt_double(result.nu_grid[j]) << ','
          << fmt_double(result.sp0[c]) << ',' << fmt_double(result.sp1[c])
          << ',' << fmt_double(result.ipr[c]) << ','
          << fmt_double(result.ipr_norm[c]) << ','
          << fmt_double(result.entropy[c]) << ','
          << static_cast<int>(result.mask[c]) << '\n';
    }
  }
  return out.str();
}

}  // namespace qwalk
