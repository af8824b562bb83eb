#pragma once

#include <map>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/lattice_state.hpp"

namespace qwalk {

/// Probes recordable along a trajectory.
///   Sp0     survival probability at the initial site
///   Sp1     survival probability within one site of the initial site
///   Ipr     inverse participation ratio 1 / sum_n p_n^2
///   Entropy von Neumann entropy of the reduced coin state, in [0, 1]
///   Trace   trace distance between consecutive recorded reduced coin states
enum class Probe { Sp0, Sp1, Ipr, Entropy, Trace };

Probe probe_from_tag(const std::string& tag);
std::string probe_tag(Probe probe);

/// Time-indexed probe records from one trajectory. All value sequences have
/// the same length as times.
struct ObservableSeries {
  std::vector<int> times;
  std::map<Probe, std::vector<double>> values;

  const std::vector<double>& at(Probe probe) const;
};

/// Probability of finding the walker within `radius` (0 or 1) sites of n0,
/// summed over spin. Throws IndexError when the window leaves the lattice.
double survival_probability(const WalkerState& state, int n0, int radius);

/// 1 / sum_n p_n^2 with the spin-summed site probability p_n. Ranges from 1
/// (single site) to N (uniform). Throws ValidationError on a zero state.
double inverse_participation_ratio(const WalkerState& state);

/// Mean of the probe over the final half of the series, t in [T/2, T].
/// Requires at least 4 samples.
double long_time_average(const ObservableSeries& series, Probe probe);

/// CSV with a t column followed by one column per recorded probe, in the
/// fixed order sp0, sp1, ipr, entropy, trace.
std::string series_to_csv(const ObservableSeries& series);

}  // namespace qwalk
