#include "qwalk/observables.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "qwalk/csv.hpp"

namespace qwalk {

Probe probe_from_tag(const std::string& tag) {
  if (tag == "sp0") return Probe::Sp0;
  if (tag == "sp1") return Probe::Sp1;
  if (tag == "ipr") return Probe::Ipr;
  if (tag == "entropy") return Probe::Entropy;
  if (tag == "trace") return Probe::Trace;
  throw ValidationError("unknown probe tag '" + tag +
                        "' (expected sp0, sp1, ipr, entropy or trace)");
}

std::string probe_tag(Probe probe) {
  switch (probe) {
    case Probe::Sp0: return "sp0";
    case Probe::Sp1: return "sp1";
    case Probe::Ipr: return "ipr";
    case Probe::Entropy: return "entropy";
    case Probe::Trace: return "trace";
  }
  throw ValidationError("invalid probe value");
}

const std::vector<double>& ObservableSeries::at(Probe probe) const {
  auto it = values.find(probe);
  if (it == values.end()) {
    throw ValidationError("probe '" + probe_tag(probe) +
                          "' was not recorded in this series");
  }
  return it->second;
}

double survival_probability(const WalkerState& state, int n0, int radius) {
  if (radius != 0 && radius != 1) {
    throw ValidationError("survival probability radius must be 0 or 1, got " +
                          std::to_string(radius));
  }
  if (n0 - radius < 0 || n0 + radius >= state.n_sites()) {
    throw IndexError("survival window [" + std::to_string(n0 - radius) + ", " +
                     std::to_string(n0 + radius) + "] leaves the lattice");
  }
  double p = 0.0;
  for (int n = n0 - radius; n <= n0 + radius; ++n) {
    const auto i = static_cast<std::size_t>(n);
    p += std::norm(state.up[i]) + std::norm(state.down[i]);
  }
  return p;
}

double inverse_participation_ratio(const WalkerState& state) {
  double sum_p2 = 0.0;
  for (std::size_t i = 0; i < state.up.size(); ++i) {
    const double p = std::norm(state.up[i]) + std::norm(state.down[i]);
    sum_p2 += p * p;
  }
  if (sum_p2 <= 0.0) {
    throw ValidationError("IPR undefined for a zero-norm state");
  }
  return 1.0 / sum_p2;
}

double long_time_average(const ObservableSeries& series, Probe probe) {
  const auto& vals = series.at(probe);
  if (series.times.size() < 4) {
    throw ValidationError("long-time average needs at least 4 samples, got " +
                          std::to_string(series.times.size()));
  }
  const int t_final = series.times.back();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    if (2 * series.times[i] >= t_final) {  // t >= T/2, exact in integers
      sum += vals[i];
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

std::string series_to_csv(const ObservableSeries& series) {
  static constexpr std::array<Probe, 5> kOrder = {
      Probe::Sp0, Probe::Sp1, Probe::Ipr, Probe::Entropy, Probe::Trace};
  std::vector<Probe> present;
  for (Probe p : kOrder) {
    if (series.values.count(p) > 0) present.push_back(p);
  }
  std::ostringstream out;
  out << 't';
  for (Probe p : present) out << ',' << probe_tag(p);
  out << '\n';
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << series.times[i];
    for (Probe p : present) out << ',' << fmt_double(series.values.at(p)[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace qwalk
