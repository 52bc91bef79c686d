#include "concord/agreement.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "concord/error.hpp"

namespace concord {

AgreementTable from_counts(const std::vector<std::vector<std::int64_t>>& matrix,
                           const CategoryScheme& scheme) {
  const std::size_t k = matrix.size();
  for (const auto& row : matrix) {
    if (row.size() != k) {
      throw Error(ErrorCode::NonSquare, "count matrix has " + std::to_string(k) +
                                            " rows but a row of length " +
                                            std::to_string(row.size()));
    }
  }
  if (k != scheme.size()) {
    throw Error(ErrorCode::DimensionMismatch, "count matrix is " + std::to_string(k) + "x" +
                                                  std::to_string(k) + " but the scheme has " +
                                                  std::to_string(scheme.size()) + " labels");
  }
  std::vector<std::int64_t> counts;
  counts.reserve(k * k);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto c = matrix[i][j];
      if (c < 0) {
        throw Error(ErrorCode::NegativeCount, "negative count at (" + scheme.label(i) + ", " +
                                                  scheme.label(j) + ")");
      }
      counts.push_back(c);
      total += c;
    }
  }
  if (total == 0) {
    throw Error(ErrorCode::ZeroTotal, "agreement table has no observations");
  }
  return AgreementTable(scheme, std::move(counts), total);
}

std::int64_t AgreementTable::diagonal_sum() const {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    sum += at(i, i);
  }
  return sum;
}

std::int64_t AgreementTable::row_total(std::size_t row) const {
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < size(); ++j) {
    sum += at(row, j);
  }
  return sum;
}

std::int64_t AgreementTable::col_total(std::size_t col) const {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    sum += at(i, col);
  }
  return sum;
}

AgreementTable AgreementTable::transposed() const {
  std::vector<std::int64_t> t(counts_.size());
  const std::size_t k = size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      t[j * k + i] = counts_[i * k + j];
    }
  }
  return AgreementTable(scheme_, std::move(t), total_);
}

ProportionTable::ProportionTable(CategoryScheme scheme, std::vector<double> cells)
    : scheme_(std::move(scheme)), cells_(std::move(cells)) {
  if (cells_.size() != scheme_.size() * scheme_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "proportion table size does not match its scheme");
  }
  double sum = 0.0;
  for (double c : cells_) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "proportion outside [0, 1]");
    }
    sum += c;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "proportions sum to " + std::to_string(sum));
  }
}

double observed_agreement(const AgreementTable& table) {
  return static_cast<double>(table.diagonal_sum()) / static_cast<double>(table.total());
}

double observed_agreement(const ProportionTable& table) {
  double sum = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    sum += table.at(i, i);
  }
  return sum;
}

std::vector<double> marginals(const AgreementTable& table, Axis axis) {
  std::vector<double> out(table.size());
  const auto n = static_cast<double>(table.total());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto count = axis == Axis::Rows ? table.row_total(i) : table.col_total(i);
    out[i] = static_cast<double>(count) / n;
  }
  return out;
}

std::vector<double> marginals(const ProportionTable& table, Axis axis) {
  std::vector<double> out(table.size(), 0.0);
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      out[axis == Axis::Rows ? i : j] += table.at(i, j);
    }
  }
  return out;
}

ProportionTable proportion_table(const AgreementTable& table) {
  std::vector<double> cells;
  cells.reserve(table.size() * table.size());
  const auto n = static_cast<double>(table.total());
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      cells.push_back(static_cast<double>(table.at(i, j)) / n);
    }
  }
  return ProportionTable(table.scheme(), std::move(cells));
}

namespace {

ProportionTable outer(const CategoryScheme& scheme, const std::vector<double>& rows,
                      const std::vector<double>& cols) {
  std::vector<double> cells;
  cells.reserve(rows.size() * cols.size());
  for (double r : rows) {
    for (double c : cols) {
      cells.push_back(r * c);
    }
  }
  return ProportionTable(scheme, std::move(cells));
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

ProportionTable expected_table(const AgreementTable& table) {
  return outer(table.scheme(), marginals(table, Axis::Rows), marginals(table, Axis::Cols));
}

ProportionTable expected_table(const ProportionTable& table) {
  return outer(table.scheme(), marginals(table, Axis::Rows), marginals(table, Axis::Cols));
}

double expected_agreement(const AgreementTable& table) {
  return dot(marginals(table, Axis::Rows), marginals(table, Axis::Cols));
}

double expected_agreement(const ProportionTable& table) {
  return dot(marginals(table, Axis::Rows), marginals(table, Axis::Cols));
}

std::optional<double> kappa_from(double p_observed, double p_expected) {
  const double denom = 1.0 - p_expected;
  if (denom < kDegenerateTolerance) {
    return std::nullopt;
  }
  return (p_observed - p_expected) / denom;
}

AgreementSummary cohen_kappa(const AgreementTable& table) {
  AgreementSummary s;
  s.row_marginals = marginals(table, Axis::Rows);
  s.col_marginals = marginals(table, Axis::Cols);
  s.p_observed = observed_agreement(table);
  s.p_expected = dot(s.row_marginals, s.col_marginals);
  s.kappa = kappa_from(s.p_observed, s.p_expected);
  s.n = table.total();
  return s;
}

AgreementSummary cohen_kappa(const ProportionTable& table) {
  AgreementSummary s;
  s.row_marginals = marginals(table, Axis::Rows);
  s.col_marginals = marginals(table, Axis::Cols);
  s.p_observed = observed_agreement(table);
  s.p_expected = dot(s.row_marginals, s.col_marginals);
  s.kappa = kappa_from(s.p_observed, s.p_expected);
  return s;
}

AgreementSummary summarize(const AgreementTable& table) { return cohen_kappa(table); }

}  // namespace concord
