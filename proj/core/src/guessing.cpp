#include "concord/guessing.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "concord/error.hpp"
#include "concord/rng.hpp"

namespace concord {

namespace {

CategoryScheme default_scheme(std::size_t k) {
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= k; ++i) {
    labels.push_back("C" + std::to_string(i));
  }
  return CategoryScheme(std::move(labels));
}

const std::vector<double>& checked_p(const std::vector<double>& p) {
  if (p.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a guessing model needs at least 2 categories");
  }
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "category probabilities must be nonnegative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument,
                "category probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  return p;
}

}  // namespace

GuessingModel::GuessingModel(double pi, std::vector<double> p, std::optional<CategoryScheme> scheme)
    : pi_(pi), p_(std::move(p)), scheme_(scheme ? std::move(*scheme) : default_scheme(checked_p(p_).size())) {
  checked_p(p_);
  if (!(pi_ >= 0.0 && pi_ <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "pi must lie in [0, 1]");
  }
  if (scheme_.size() != p_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "scheme size differs from the probability vector");
  }
}

ProportionTable model_table(const GuessingModel& model) {
  const auto& p = model.p();
  const double gamma = model.gamma();
  std::vector<double> cells;
  cells.reserve(p.size() * p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      double cell = gamma * p[i] * p[j];
      if (i == j) {
        cell += model.pi() * p[i];
      }
      cells.push_back(cell);
    }
  }
  return ProportionTable(model.scheme(), std::move(cells));
}

std::optional<double> model_kappa(const GuessingModel& model) {
  const auto& p = model.p();
  const double sum_sq = std::inner_product(p.begin(), p.end(), p.begin(), 0.0);
  if (1.0 - sum_sq < kDegenerateTolerance) {
    return std::nullopt;
  }
  return model.pi();
}

AgreementTable simulate_run(const GuessingModel& model, std::int64_t n, std::uint64_t seed) {
  if (n < 1) {
    throw Error(ErrorCode::InvalidArgument, "simulation length must be positive");
  }
  const auto& p = model.p();
  const std::size_t k = p.size();

  // Close the CDF at the last category with positive mass so rounding in
  // the partial sums can never select a zero-probability tail category.
  std::vector<double> cumulative(k);
  std::partial_sum(p.begin(), p.end(), cumulative.begin());
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (p[i] > 0.0) {
      last_positive = i;
    }
  }
  for (std::size_t i = last_positive; i < k; ++i) {
    cumulative[i] = 1.0;
  }

  Rng rng(seed);
  const double gamma = model.gamma();
  std::vector<std::vector<std::int64_t>> counts(k, std::vector<std::int64_t>(k, 0));
  for (std::int64_t t = 0; t < n; ++t) {
    const auto truth = rng.categorical(cumulative);
    if (rng.bernoulli(gamma)) {
      const auto first = rng.categorical(cumulative);
      const auto second = rng.categorical(cumulative);
      ++counts[first][second];
    } else {
      ++counts[truth][truth];
    }
  }
  return from_counts(counts, model.scheme());
}

std::vector<SweepPoint> sweep_kappa(const std::vector<GuessingModel>& models, std::int64_t n,
                                    std::uint64_t seed) {
  std::vector<SweepPoint> out;
  out.reserve(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto table = simulate_run(models[i], n, derive_seed(seed, i));
    out.push_back({models[i].pi(), cohen_kappa(table).kappa});
  }
  return out;
}

}  // namespace concord
