#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "concord/agreement.hpp"
#include "concord/categories.hpp"

namespace concord {

/// Shrewd-guessing rater: with probability `pi` the category is perceived
/// exactly, otherwise it is guessed from the known category distribution p.
/// The guessing rate is always derived as 1 - pi.
class GuessingModel {
 public:
  /// Labels default to C1..CK. Throws on pi outside [0, 1], K < 2, a
  /// negative p entry, p not summing to 1 within 1e-12, or a scheme whose
  /// size differs from p.
  GuessingModel(double pi, std::vector<double> p, std::optional<CategoryScheme> scheme = {});

  double pi() const noexcept { return pi_; }
  double gamma() const noexcept { return 1.0 - pi_; }
  const std::vector<double>& p() const noexcept { return p_; }
  const CategoryScheme& scheme() const noexcept { return scheme_; }
  std::size_t size() const noexcept { return p_.size(); }

 private:
  double pi_;
  std::vector<double> p_;
  CategoryScheme scheme_;
};

/// Closed form: diagonal pi*p_i + gamma*p_i^2, off-diagonal gamma*p_i*p_j.
ProportionTable model_table(const GuessingModel& model);

/// Kappa of the closed-form table, which is exactly pi. Empty when p puts
/// (numerically) all its mass on one category.
std::optional<double> model_kappa(const GuessingModel& model);

/// One rater judging the same length-n sequence twice. Guess positions are
/// Bernoulli(gamma) per position and shared by both rounds; perceived
/// positions report the truth, guessed ones draw independently from p in
/// each round. Deterministic in (model, n, seed).
AgreementTable simulate_run(const GuessingModel& model, std::int64_t n, std::uint64_t seed);

struct SweepPoint {
  double pi = 0.0;
  std::optional<double> kappa_hat;
};

/// simulate_run + cohen_kappa per model; model i uses derive_seed(seed, i).
std::vector<SweepPoint> sweep_kappa(const std::vector<GuessingModel>& models, std::int64_t n,
                                    std::uint64_t seed);

}  // namespace concord
