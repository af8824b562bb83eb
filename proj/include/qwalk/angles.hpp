#pragma once

#include <string>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

/// Parse a real number that may be written as a fraction of pi:
/// "0.7853981", "pi", "pi/4", "2pi", "3pi/4", "2*pi/50", "-pi/2".
double parse_angle(const std::string& text);

/// Parse a grid of values: either a comma list ("0,0.05,1") or an inclusive
/// range "min:max:step". Each element accepts the parse_angle forms.
std::vector<double> parse_grid(const std::string& text);

}  // namespace qwalk
