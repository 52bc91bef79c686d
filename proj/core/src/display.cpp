#include "concord/display.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <fmt/format.h>

#include "concord/agreement.hpp"
#include "concord/error.hpp"

namespace concord {

double round_half_away(double value, int decimals) {
  if (decimals < 0 || decimals > 15) {
    throw Error(ErrorCode::InvalidArgument, "decimals must be in [0, 15]");
  }
  const double scale = std::pow(10.0, decimals);
  // Snap representation error (e.g. 2.675 stored as 2.67499999...) before rounding.
  const double scaled = std::strtod(fmt::format("{:.12g}", value * scale).c_str(), nullptr);
  return std::round(scaled) / scale;
}

std::string format_fixed(double value, int decimals) {
  const double r = round_half_away(value, decimals);
  auto text = fmt::format("{:.{}f}", r, decimals);
  if (text.starts_with('-') && text.find_first_not_of("-0.") == std::string::npos) {
    text.erase(0, 1);
  }
  return text;
}

std::string format_percent(double proportion, int decimals) {
  return format_fixed(proportion * 100.0, decimals) + "%";
}

std::vector<double> rounded_percent_cells(const ProportionTable& table, int decimals) {
  std::vector<double> out;
  out.reserve(table.cells().size());
  for (double c : table.cells()) {
    out.push_back(round_half_away(c * 100.0, decimals));
  }
  return out;
}

}  // namespace concord
