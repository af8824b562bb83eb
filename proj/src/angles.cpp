#include "qwalk/angles.hpp"

#include <cmath>
#include <cstddef>

namespace qwalk {

namespace {

std::string strip(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1);
}

double parse_plain(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse number '" + text + "'");
  }
  if (used != text.size()) {
    throw ValidationError("trailing characters in number '" + text + "'");
  }
  return value;
}

}  // namespace

double parse_angle(const std::string& raw) {
  const std::string text = strip(raw);
  if (text.empty()) throw ValidationError("empty number");
  const auto pi_pos = text.find("pi");
  if (pi_pos == std::string::npos) return parse_plain(text);

  double coef = 1.0;
  std::string head = strip(text.substr(0, pi_pos));
  if (!head.empty() && head.back() == '*') head = strip(head.substr(0, head.size() - 1));
  if (head == "-") {
    coef = -1.0;
  } else if (head == "+" || head.empty()) {
    coef = 1.0;
  } else {
    coef = parse_plain(head);
  }

  double denom = 1.0;
  std::string tail = strip(text.substr(pi_pos + 2));
  if (!tail.empty()) {
    if (tail.front() != '/') {
      throw ValidationError("cannot parse angle '" + raw + "'");
    }
    denom = parse_plain(strip(tail.substr(1)));
    if (denom == 0.0) throw ValidationError("division by zero in '" + raw + "'");
  }
  return coef * M_PI / denom;
}

std::vector<double> parse_grid(const std::string& raw) {
  const std::string text = strip(raw);
  if (text.find(':') != std::string::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
      throw ValidationError("range must be min:max:step, got '" + raw + "'");
    }
    const double lo = parse_angle(text.substr(0, c1));
    const double hi = parse_angle(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_angle(text.substr(c2 + 1));
    if (step <= 0.0 || hi < lo) {
      throw ValidationError("range needs step > 0 and max >= min: '" + raw +
                            "'");
    }
    std::vector<double> grid;
    // Inclusive endpoint with slack for accumulated rounding.
    const double slack = step * 1e-9;
    for (int k = 0;; ++k) {
      const double value = lo + step * k;
      if (value > hi + slack) break;
      grid.push_back(value);
    }
    return grid;
  }
  std::vector<double> grid;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item =
        comma == std::string::npos ? text.substr(start)
                                   : text.substr(start, comma - start);
    grid.push_back(parse_angle(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (grid.empty()) throw ValidationError("empty grid '" + raw + "'");
  return grid;
}

}  // namespace qwalk
