// Command-line front end: evolve single trajectories, diagonalize the
// one-step operator, sweep (theta0, nu) grids, and fit trace-distance tails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwalk/angles.hpp"
#include "qwalk/csv.hpp"
#include "qwalk/entanglement.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/lattice_state.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/spectrum.hpp"

namespace fs = std::filesystem;
using namespace qwalk;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

std::set<Probe> parse_probes(const std::string& text) {
  std::set<Probe> probes;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    if (item == "sp") {  // shorthand for both survival windows
      probes.insert(Probe::Sp0);
      probes.insert(Probe::Sp1);
    } else {
      probes.insert(probe_from_tag(item));
    }
  }
  if (probes.empty()) throw ValidationError("no probes requested");
  return probes;
}

fs::path resolve(const std::string& out_dir, const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return p;
  return fs::path(out_dir) / p;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path.string());
  out << content;
  if (!out) throw ValidationError("failed writing " + path.string());
}

struct TrajectoryArgs {
  std::string theta0 = "pi/4";
  std::string nu = "0";
  int n_sites = 0;  // 0: auto
  int n0 = -1;      // -1: center
  int steps = 500;
  int record_every = 1;
  double up_re = 1.0, up_im = 0.0, down_re = 0.0, down_im = 0.0;
  std::string boundary = "guard";
};

void add_trajectory_options(CLI::App* cmd, TrajectoryArgs& args) {
  cmd->add_option("--theta0", args.theta0,
                  "base coin angle (accepts pi fractions, e.g. pi/4)");
  cmd->add_option("--nu", args.nu, "aperiodicity exponent");
  cmd->add_option("--n", args.n_sites,
                  "lattice sites (default: auto-sized to the step count)");
  cmd->add_option("--n0", args.n0, "initial site (default: lattice center)");
  cmd->add_option("--steps", args.steps, "number of time steps");
  cmd->add_option("--record-every", args.record_every, "sampling stride");
  cmd->add_option("--up-re", args.up_re, "initial spinor up amplitude, real");
  cmd->add_option("--up-im", args.up_im, "initial spinor up amplitude, imag");
  cmd->add_option("--down-re", args.down_re,
                  "initial spinor down amplitude, real");
  cmd->add_option("--down-im", args.down_im,
                  "initial spinor down amplitude, imag");
}

struct ResolvedRun {
  double theta0;
  double nu;
  int n_sites;
  int n0;
};

ResolvedRun resolve_run(const TrajectoryArgs& args) {
  ResolvedRun run{};
  run.theta0 = parse_angle(args.theta0);
  run.nu = parse_angle(args.nu);
  if (args.n_sites <= 0) {
    const AutoLattice lattice = auto_lattice(args.steps);
    run.n_sites = lattice.n_sites;
    run.n0 = args.n0 >= 0 ? args.n0 : lattice.n0;
  } else {
    run.n_sites = args.n_sites;
    run.n0 = args.n0 >= 0 ? args.n0 : args.n_sites / 2;
  }
  return run;
}

EvolveResult run_trajectory(const TrajectoryArgs& args,
                            const std::set<Probe>& probes) {
  const ResolvedRun run = resolve_run(args);
  const CoinField field = build_field(run.theta0, run.nu, run.n_sites);
  const WalkerState state0 = make_localized_state(
      {run.n0, {args.up_re, args.up_im}, {args.down_re, args.down_im}},
      run.n_sites);
  EvolutionConfig config;
  config.n_steps = args.steps;
  config.record_every = args.record_every;
  config.n0 = run.n0;
  config.boundary = args.boundary == "periodic" ? Boundary::Periodic
                                                : Boundary::LightConeGuard;
  return evolve(state0, field, config, probes);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D discrete-time quantum walks with aperiodic "
               "position-dependent coins t(n) = theta0 * n^nu"};
  app.set_version_flag("--version", QWALK_VERSION);
  app.set_config("--config", "", "key=value config file mirroring the flags");
  app.require_subcommand(1);

  std::string out_dir = ".";
  int threads = 0;
  app.add_option("--out", out_dir, "output directory for relative paths")
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  // evolve
  auto* evolve_cmd =
      app.add_subcommand("evolve", "run one trajectory and record probes");
  TrajectoryArgs evolve_args;
  add_trajectory_options(evolve_cmd, evolve_args);
  std::string probes_text = "sp,ipr,entropy,trace";
  std::string evolve_out = "evolve.csv";
  std::string save_state_path;
  evolve_cmd->add_option("--probes", probes_text,
                         "comma list: sp (= sp0,sp1), sp0, sp1, ipr, entropy, "
                         "trace");
  evolve_cmd->add_option("--boundary", evolve_args.boundary,
                         "guard | periodic")
      ->check(CLI::IsMember({"guard", "periodic"}));
  evolve_cmd->add_option("--save-state", save_state_path,
                         "also write the final state as JSON");
  evolve_cmd->add_option("--out", evolve_out, "time-series CSV path");

  // spectrum
  auto* spectrum_cmd = app.add_subcommand(
      "spectrum", "diagonalize the one-step operator on a periodic ring");
  std::string spec_theta0 = "pi/4", spec_nu = "0";
  int spec_n = 64;
  double gap_threshold = kDefaultGapThreshold;
  double degeneracy_tol = kDefaultDegeneracyTol;
  int cluster_min = kDefaultClusterMin;
  std::string spectrum_out = "spectrum.csv";
  spectrum_cmd->add_option("--theta0", spec_theta0, "base coin angle");
  spectrum_cmd->add_option("--nu", spec_nu, "aperiodicity exponent");
  spectrum_cmd->add_option("--n", spec_n, "lattice sites");
  spectrum_cmd->add_option("--gap-threshold", gap_threshold,
                           "minimum spacing reported as a gap");
  spectrum_cmd->add_option("--degeneracy-tol", degeneracy_tol,
                           "energy tolerance for flat clusters");
  spectrum_cmd->add_option("--cluster-min", cluster_min,
                           "minimum eigenvalues per flat cluster");
  spectrum_cmd->add_option("--out", spectrum_out,
                           "spectrum CSV path (band report JSON written "
                           "alongside)");

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "grid of trajectories over (theta0, nu) with long-time "
               "averages");
  std::string theta0_grid_text = "0:2pi:pi/50";
  std::string nu_grid_text = "0:4:0.05";
  TrajectoryArgs sweep_args;
  std::string sweep_csv = "sweep.csv";
  std::string manifest_name = "manifest.json";
  sweep_cmd->add_option("--theta0", theta0_grid_text,
                        "theta0 grid: comma list or min:max:step");
  sweep_cmd->add_option("--nu", nu_grid_text,
                        "nu grid: comma list or min:max:step");
  sweep_cmd->add_option("--n", sweep_args.n_sites, "lattice sites (0 = auto)");
  sweep_cmd->add_option("--n0", sweep_args.n0, "initial site (-1 = center)");
  sweep_cmd->add_option("--steps", sweep_args.steps, "steps per cell");
  sweep_cmd->add_option("--record-every", sweep_args.record_every,
                        "sampling stride per cell");
  sweep_cmd->add_option("--csv-name", sweep_csv, "sweep CSV file name");
  sweep_cmd->add_option("--manifest-name", manifest_name,
                        "manifest JSON file name");

  // asymptote
  auto* asymptote_cmd = app.add_subcommand(
      "asymptote", "fit a power law to the trace-distance tail");
  TrajectoryArgs asymptote_args;
  add_trajectory_options(asymptote_cmd, asymptote_args);
  int window_min = 0, window_max = 0;
  std::string asymptote_out = "asymptote.json";
  asymptote_cmd->add_option("--window-min", window_min,
                            "fit window start (0 = last 90% of usable "
                            "samples)");
  asymptote_cmd->add_option("--window-max", window_max,
                            "fit window end (0 = final step)");
  asymptote_cmd->add_option("--out", asymptote_out, "fit JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*evolve_cmd) {
      const auto probes = parse_probes(probes_text);
      const auto result = run_trajectory(evolve_args, probes);
      const fs::path csv_path = resolve(out_dir, evolve_out);
      write_file(csv_path, series_to_csv(result.series));
      std::cout << "wrote " << csv_path.string() << "\n";
      if (!save_state_path.empty()) {
        const fs::path state_path = resolve(out_dir, save_state_path);
        write_file(state_path, state_to_json(result.final_state));
        std::cout << "wrote " << state_path.string() << "\n";
      }
    } else if (*spectrum_cmd) {
      const double theta0 = parse_angle(spec_theta0);
      const double nu = parse_angle(spec_nu);
      const CoinField field = build_field(theta0, nu, spec_n);
      const auto spectrum = quasi_energies(build_floquet_matrix(field));
      const auto report =
          band_report(spectrum, gap_threshold, degeneracy_tol, cluster_min);
      const fs::path csv_path = resolve(out_dir, spectrum_out);
      write_file(csv_path, spectrum_to_csv(spectrum));
      fs::path json_path = csv_path;
      json_path.replace_extension(".bands.json");
      write_file(json_path, band_report_to_json(report, theta0, nu, spec_n));
      std::cout << "wrote " << csv_path.string() << "\n";
      std::cout << "wrote " << json_path.string() << "\n";
    } else if (*sweep_cmd) {
      SweepSpec spec;
      spec.theta0_grid = parse_grid(theta0_grid_text);
      spec.nu_grid = parse_grid(nu_grid_text);
      spec.run.n_steps = sweep_args.steps;
      spec.run.record_every = sweep_args.record_every;
      spec.run.n_sites = sweep_args.n_sites;
      spec.run.n0 = sweep_args.n0;
      spec.threads = threads;
      const auto start = std::chrono::steady_clock::now();
      const auto result = run_sweep(spec);
      const double wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      const fs::path csv_path = resolve(out_dir, sweep_csv);
      write_file(csv_path, sweep_to_csv(result));
      nlohmann::json manifest;
      manifest["version"] = QWALK_VERSION;
      manifest["theta0_grid"] = result.theta0_grid;
      manifest["nu_grid"] = result.nu_grid;
      manifest["n_sites"] = result.n_sites;
      manifest["n0"] = result.n0;
      manifest["n_steps"] = result.n_steps;
      manifest["record_every"] = result.record_every;
      manifest["threads"] = threads;
      manifest["cells"] = result.theta0_grid.size() * result.nu_grid.size();
      manifest["wall_seconds"] = wall_seconds;
      manifest["csv"] = csv_path.filename().string();
      const fs::path manifest_path = resolve(out_dir, manifest_name);
      write_file(manifest_path, manifest.dump(2));
      std::cout << "wrote " << csv_path.string() << "\n";
      std::cout << "wrote " << manifest_path.string() << "\n";
    } else if (*asymptote_cmd) {
      asymptote_args.record_every = 1;  // the tail fit needs every step
      const auto result = run_trajectory(asymptote_args, {Probe::Trace});
      const auto& times = result.series.times;
      const auto& distances = result.series.at(Probe::Trace);
      nlohmann::json fit_json;
      fit_json["theta0"] = parse_angle(asymptote_args.theta0);
      fit_json["nu"] = parse_angle(asymptote_args.nu);
      fit_json["steps"] = asymptote_args.steps;
      try {
        const PowerLawFit fit =
            window_min > 0
                ? asymptotic_fit(times, distances, window_min,
                                 window_max > 0 ? window_max
                                                : asymptote_args.steps)
                : asymptotic_fit_tail(times, distances);
        fit_json["power_law"] = true;
        fit_json["exponent"] = fit.exponent;
        fit_json["amplitude"] = fit.amplitude;
        fit_json["r_squared"] = fit.r_squared;
        fit_json["window"] = {fit.t_min, fit.t_max};
        fit_json["points_used"] = fit.points_used;
        fit_json["zeros_excluded"] = fit.zeros_excluded;
      } catch (const FitError& e) {
        if (window_min > 0) throw;  // explicit window: surface the error
        // Default window with nothing to fit (e.g. exact period-2 dynamics
        // where D is identically zero): not a failure, just no power law.
        fit_json["power_law"] = false;
        fit_json["reason"] = e.what();
      }
      const fs::path json_path = resolve(out_dir, asymptote_out);
      write_file(json_path, fit_json.dump(2));
      std::cout << "wrote " << json_path.string() << "\n";
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
