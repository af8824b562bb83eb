#pragma once

#include <string>

namespace qwalk {

/// Shortest round-trippable decimal form with 17 significant digits.
/// All numeric file output goes through this so reruns are byte-identical.
std::string fmt_double(double value);

}  // namespace qwalk
