#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "concord/agreement.hpp"
#include "concord/inference.hpp"

namespace concord {

// ---------------------------------------------------------------------------
// Observed-vs-expected scatter plots
// ---------------------------------------------------------------------------

/// Fixed SVG geometry. The unit square maps affinely onto
/// [kPlotMargin, kPlotSize - kPlotMargin] on both axes, y pointing up:
///   px = 60 + 480 * p_expected,  py = 540 - 480 * p_observed.
inline constexpr double kPlotSize = 600.0;
inline constexpr double kPlotMargin = 60.0;
inline constexpr double kPlotSpan = kPlotSize - 2.0 * kPlotMargin;

double plot_x(double p_expected) noexcept;
double plot_y(double p_observed) noexcept;

struct ScatterPoint {
  double p_expected = 0.0;
  double p_observed = 0.0;
  std::string label;
};

inline const std::vector<double> kDefaultIsolines{0.0, 0.8};

struct ScatterSpec {
  std::vector<ScatterPoint> points;
  std::vector<double> isolines = kDefaultIsolines;
  std::string title;
};

/// Self-contained SVG: axes over the unit square, one <circle class="point">
/// per point, one <line class="isoline"> per kappa from (0, kappa) to (1, 1),
/// and Tukey box panels of the expected values (top margin) and observed
/// values (right margin). Throws Error(InvalidArgument) for points outside
/// the unit square or isoline kappas outside [0, 1].
std::string scatter_plot(const ScatterSpec& spec);

std::string xml_escape(std::string_view text);

// ---------------------------------------------------------------------------
// Tabular summaries
// ---------------------------------------------------------------------------

struct SummaryKey {
  std::string subject;
  std::string stratum;
  std::string material;
  std::string scheme;

  friend auto operator<=>(const SummaryKey&, const SummaryKey&) = default;
};

enum class SummaryFormat { Text, Csv, Json };

struct DisplayOptions {
  int percent_decimals = 1;
  int kappa_decimals = 4;
};

inline constexpr std::string_view kSummaryCsvHeader =
    "subject,stratum,material,scheme,n,p_observed,p_expected,kappa,band";
inline constexpr std::string_view kAverageSubject = "AVERAGE";
inline constexpr std::string_view kDegenerateBand = "n/a (degenerate)";

/// One row per key, grouped by (material, stratum, scheme) with the pooled
/// "ALL" subject first. Each group with at least one individual subject gets
/// an AVERAGE row: unweighted means of P_o and P_e over those subjects, mean
/// kappa over the non-degenerate ones, summed n. Throws Error(EmptyInput) on
/// an empty map.
std::string render_summary(const std::map<SummaryKey, AgreementSummary>& analyses,
                           SummaryFormat format, const DisplayOptions& options = {});

/// Labeled text block followed by one machine-readable `SIGNTEST ...` line.
std::string render_sign_test(const SignTestResult& result, std::string_view label);

}  // namespace concord
