#pragma once

#include <string>
#include <vector>

namespace concord {

class ProportionTable;

/// Rounds half away from zero at `decimals` places. The value is first
/// snapped to 12 significant digits so that 0.7895833 * 100 lands on the
/// expected 78.958... and not one ulp below a tie.
double round_half_away(double value, int decimals);

/// Fixed-point text of `value` rounded half away from zero.
std::string format_fixed(double value, int decimals);

/// "79.0%" style rendering of a proportion.
std::string format_percent(double proportion, int decimals);

/// Cells of `table` in percent, each rounded half away from zero to
/// `decimals` places: the usual report form of an observed or expected table.
std::vector<double> rounded_percent_cells(const ProportionTable& table, int decimals);

}  // namespace concord
