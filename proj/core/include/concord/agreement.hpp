#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "concord/categories.hpp"

namespace concord {

/// Square count matrix over a category scheme. Rows hold the first
/// evaluation, columns the second. Counts are the source of truth; every
/// proportion is derived from them.
class AgreementTable {
 public:
  const CategoryScheme& scheme() const noexcept { return scheme_; }
  std::size_t size() const noexcept { return scheme_.size(); }
  std::int64_t at(std::size_t row, std::size_t col) const { return counts_.at(row * size() + col); }
  std::int64_t total() const noexcept { return total_; }
  std::int64_t diagonal_sum() const;
  std::int64_t row_total(std::size_t row) const;
  std::int64_t col_total(std::size_t col) const;

  AgreementTable transposed() const;

  friend bool operator==(const AgreementTable&, const AgreementTable&) = default;

 private:
  friend AgreementTable from_counts(const std::vector<std::vector<std::int64_t>>&,
                                    const CategoryScheme&);
  AgreementTable(CategoryScheme scheme, std::vector<std::int64_t> counts, std::int64_t total)
      : scheme_(std::move(scheme)), counts_(std::move(counts)), total_(total) {}

  CategoryScheme scheme_;
  std::vector<std::int64_t> counts_;  // row-major
  std::int64_t total_;
};

/// Validates and builds a table. Non-square input, a negative entry, an
/// all-zero matrix and a size that differs from the scheme each raise their
/// own ErrorCode.
AgreementTable from_counts(const std::vector<std::vector<std::int64_t>>& matrix,
                           const CategoryScheme& scheme);

/// Square matrix of cell proportions that sums to one.
class ProportionTable {
 public:
  /// Throws if the matrix is not K x K, a cell is outside [0, 1], or the
  /// cells do not sum to 1 within 1e-12.
  ProportionTable(CategoryScheme scheme, std::vector<double> cells);

  const CategoryScheme& scheme() const noexcept { return scheme_; }
  std::size_t size() const noexcept { return scheme_.size(); }
  double at(std::size_t row, std::size_t col) const { return cells_.at(row * size() + col); }
  const std::vector<double>& cells() const noexcept { return cells_; }

 private:
  CategoryScheme scheme_;
  std::vector<double> cells_;  // row-major
};

enum class Axis { Rows, Cols };

double observed_agreement(const AgreementTable& table);
double observed_agreement(const ProportionTable& table);

std::vector<double> marginals(const AgreementTable& table, Axis axis);
std::vector<double> marginals(const ProportionTable& table, Axis axis);

ProportionTable proportion_table(const AgreementTable& table);

/// Independence table: cell (i, j) = row_marginal(i) * col_marginal(j).
ProportionTable expected_table(const AgreementTable& table);
ProportionTable expected_table(const ProportionTable& table);

/// Sum over categories of row_marginal(i) * col_marginal(i).
double expected_agreement(const AgreementTable& table);
double expected_agreement(const ProportionTable& table);

/// Below this, 1 - P_e is treated as zero and kappa is undefined.
inline constexpr double kDegenerateTolerance = 1e-12;

/// (P_o - P_e) / (1 - P_e), or nullopt when 1 - P_e < kDegenerateTolerance.
std::optional<double> kappa_from(double p_observed, double p_expected);

struct AgreementSummary {
  double p_observed = 0.0;
  double p_expected = 0.0;
  std::optional<double> kappa;  // empty when degenerate
  std::vector<double> row_marginals;
  std::vector<double> col_marginals;
  std::int64_t n = 0;  // 0 for summaries of proportion tables

  bool degenerate() const noexcept { return !kappa.has_value(); }
};

AgreementSummary cohen_kappa(const AgreementTable& table);
AgreementSummary cohen_kappa(const ProportionTable& table);

/// Same bundle as cohen_kappa; kept as the batch entry point.
AgreementSummary summarize(const AgreementTable& table);

}  // namespace concord
