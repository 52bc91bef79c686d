#include "concord/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "concord/error.hpp"

namespace concord {

double binomial_upper_tail_half(std::int64_t n, std::int64_t k) {
  if (n < 0) {
    throw Error(ErrorCode::InvalidArgument, "binomial size must be nonnegative");
  }
  if (k <= 0) {
    return 1.0;
  }
  if (k > n) {
    return 0.0;
  }
  const double log_half_n = static_cast<double>(n) * std::log(0.5);
  const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
  // Terms shrink away from n/2, so adding from the far tail inward keeps
  // the small ones from being swallowed.
  double sum = 0.0;
  for (std::int64_t j = n; j >= k; --j) {
    const double log_choose = lg_n1 - std::lgamma(static_cast<double>(j) + 1.0) -
                              std::lgamma(static_cast<double>(n - j) + 1.0);
    sum += std::exp(log_choose + log_half_n);
  }
  return std::min(sum, 1.0);
}

SignTestResult sign_test(std::span<const double> differences) {
  if (differences.empty()) {
    throw Error(ErrorCode::EmptyInput, "sign test needs at least one difference");
  }
  SignTestResult r;
  for (double d : differences) {
    if (std::isnan(d)) {
      throw Error(ErrorCode::InvalidArgument, "NaN difference");
    }
    if (d > 0.0) {
      ++r.n_positive;
    } else if (d < 0.0) {
      ++r.n_negative;
    } else {
      ++r.n_zero;
    }
  }
  r.n_effective = r.n_positive + r.n_negative;
  if (r.n_effective == 0) {
    throw Error(ErrorCode::NoInformation, "all differences are zero");
  }
  r.p_value = binomial_upper_tail_half(r.n_effective, r.n_positive);
  return r;
}

std::string_view to_string(KappaBand band) {
  switch (band) {
    case KappaBand::None: return "None";
    case KappaBand::Minimal: return "Minimal";
    case KappaBand::Weak: return "Weak";
    case KappaBand::Moderate: return "Moderate";
    case KappaBand::Strong: return "Strong";
    case KappaBand::AlmostPerfect: return "Almost Perfect";
  }
  return "unknown";
}

KappaBand interpret_kappa(double kappa) {
  if (std::isnan(kappa) || kappa > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "kappa must be a number no greater than 1");
  }
  if (kappa >= 0.90) return KappaBand::AlmostPerfect;
  if (kappa >= 0.80) return KappaBand::Strong;
  if (kappa >= 0.60) return KappaBand::Moderate;
  if (kappa >= 0.40) return KappaBand::Weak;
  if (kappa >= 0.21) return KappaBand::Minimal;
  return KappaBand::None;
}

KappaBand interpret_kappa(std::optional<double> kappa) {
  if (!kappa) {
    throw Error(ErrorCode::NotInterpretable, "kappa is degenerate (expected agreement is 1)");
  }
  return interpret_kappa(*kappa);
}

double kappa_isoline(double kappa, double p_expected) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "isoline kappa must lie in [0, 1]");
  }
  if (!(p_expected >= 0.0 && p_expected <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "expected agreement must lie in [0, 1]");
  }
  return (1.0 - kappa) * p_expected + kappa;
}

namespace {

// Value at 1-based `depth` counted from the low end; half depths average.
double at_depth(const std::vector<double>& sorted, double depth) {
  const auto lo = static_cast<std::size_t>(std::floor(depth)) - 1;
  const auto hi = static_cast<std::size_t>(std::ceil(depth)) - 1;
  return (sorted[lo] + sorted[hi]) / 2.0;
}

}  // namespace

BoxStats box_stats(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::EmptyInput, "box statistics need at least one value");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());

  const double median_depth = (n + 1.0) / 2.0;
  const double hinge_depth = (std::floor(median_depth) + 1.0) / 2.0;

  BoxStats b;
  b.median = at_depth(sorted, median_depth);
  b.q1 = at_depth(sorted, hinge_depth);
  b.q3 = at_depth(sorted, n + 1.0 - hinge_depth);

  const double step = 1.5 * (b.q3 - b.q1);
  const double low_fence = b.q1 - step;
  const double high_fence = b.q3 + step;
  b.lower_whisker = b.q1;
  b.upper_whisker = b.q3;
  for (double v : sorted) {
    if (v < low_fence || v > high_fence) {
      b.outliers.push_back(v);
    } else {
      b.lower_whisker = std::min(b.lower_whisker, v);
      b.upper_whisker = std::max(b.upper_whisker, v);
    }
  }
  return b;
}

}  // namespace concord
