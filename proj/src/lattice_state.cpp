#include "qwalk/lattice_state.hpp"

#include <cmath>

#include "json.hpp"

namespace qwalk {

namespace {
constexpr double kNormTol = 1e-10;
constexpr double kSpinorTol = 1e-12;
}  // namespace

double WalkerState::norm_squared() const {
  double total = 0.0;
  for (const auto& a : up) total += std::norm(a);
  for (const auto& b : down) total += std::norm(b);
  return total;
}

WalkerState make_localized_state(const InitialStateSpec& spec, int n_sites) {
  if (n_sites < 2) {
    throw ValidationError("lattice needs at least 2 sites, got " +
                          std::to_string(n_sites));
  }
  if (spec.n0 < 0 || spec.n0 >= n_sites) {
    throw IndexError("initial site " + std::to_string(spec.n0) +
                     " outside lattice [0, " + std::to_string(n_sites) + ")");
  }
  const double spinor_norm =
      std::norm(spec.spin_up_amp) + std::norm(spec.spin_down_amp);
  if (std::abs(spinor_norm - 1.0) > kSpinorTol) {
    throw ValidationError("initial spinor is not normalized: |u|^2+|d|^2 = " +
                          std::to_string(spinor_norm));
  }
  WalkerState state;
  state.up.assign(static_cast<std::size_t>(n_sites), Complex{0.0, 0.0});
  state.down.assign(static_cast<std::size_t>(n_sites), Complex{0.0, 0.0});
  state.up[static_cast<std::size_t>(spec.n0)] = spec.spin_up_amp;
  state.down[static_cast<std::size_t>(spec.n0)] = spec.spin_down_amp;
  return state;
}

std::vector<double> position_probabilities(const WalkerState& state) {
  const std::size_t n = state.up.size();
  std::vector<double> probs(n);
  for (std::size_t i = 0; i < n; ++i) {
    probs[i] = std::norm(state.up[i]) + std::norm(state.down[i]);
  }
  return probs;
}

std::string state_to_json(const WalkerState& state) {
  nlohmann::json j;
  j["n_sites"] = state.n_sites();
  auto pack = [](const std::vector<Complex>& amps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& a : amps) arr.push_back({a.real(), a.imag()});
    return arr;
  };
  j["up"] = pack(state.up);
  j["down"] = pack(state.down);
  return j.dump();
}

WalkerState state_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed state JSON: ") + e.what());
  }
  if (!j.contains("n_sites") || !j.contains("up") || !j.contains("down")) {
    throw ValidationError("state JSON needs n_sites, up and down");
  }
  const int n_sites = j["n_sites"].get<int>();
  auto unpack = [](const nlohmann::json& arr) {
    std::vector<Complex> amps;
    amps.reserve(arr.size());
    for (const auto& pair : arr) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ValidationError("amplitude entries must be [re, im] pairs");
      }
      amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return amps;
  };
  WalkerState state;
  state.up = unpack(j["up"]);
  state.down = unpack(j["down"]);
  if (n_sites < 2 || state.up.size() != static_cast<std::size_t>(n_sites) ||
      state.down.size() != static_cast<std::size_t>(n_sites)) {
    throw ValidationError("state JSON has inconsistent sizes");
  }
  if (std::abs(state.norm_squared() - 1.0) > kNormTol) {
    throw ValidationError("state JSON is not normalized");
  }
  return state;
}

}  // namespace qwalk
