#include "qwalk/csv.hpp"

#include <cstdio>

namespace qwalk {

std::string fmt_double(double value) {
  if (value == 0.0) value = 0.0;  // canonical zero, never "-0"
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace qwalk
