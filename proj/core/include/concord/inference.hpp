#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace concord {

/// One-sided exact sign test of "observed exceeds expected". Zero
/// differences are dropped and counted in n_zero.
struct SignTestResult {
  std::int64_t n_positive = 0;
  std::int64_t n_negative = 0;
  std::int64_t n_zero = 0;
  std::int64_t n_effective = 0;
  double p_value = 1.0;  // P(X >= n_positive), X ~ Binomial(n_effective, 1/2)
};

/// Throws Error(NoInformation) when every difference is zero and
/// Error(EmptyInput) on an empty list.
SignTestResult sign_test(std::span<const double> differences);

/// Upper tail P(X >= k) of Binomial(n, 1/2), summed exactly from log
/// binomial coefficients.
double binomial_upper_tail_half(std::int64_t n, std::int64_t k);

enum class KappaBand { None, Minimal, Weak, Moderate, Strong, AlmostPerfect };

std::string_view to_string(KappaBand band);

/// Interpretation bands for kappa with lower edges 0.21, 0.40, 0.60, 0.80
/// and 0.90; each lower edge belongs to its band. Anything under 0.21,
/// negatives included, is None. kappa > 1 is an invalid argument.
KappaBand interpret_kappa(double kappa);
/// A degenerate (empty) kappa raises Error(NotInterpretable).
KappaBand interpret_kappa(std::optional<double> kappa);

/// Observed agreement on the constant-kappa line: (1 - kappa) * P_e + kappa.
double kappa_isoline(double kappa, double p_expected);

struct BoxStats {
  double lower_whisker = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double upper_whisker = 0.0;
  std::vector<double> outliers;  // ascending
};

/// Tukey five-number summary: hinges at depth (floor(median depth) + 1) / 2,
/// whiskers at the most extreme data within 1.5 * IQR of the hinges.
BoxStats box_stats(std::span<const double> values);

}  // namespace concord
