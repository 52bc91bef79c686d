#include <cmath>

#include <gtest/gtest.h>

#include "concord/agreement.hpp"
#include "concord/error.hpp"
#include "test_support.hpp"

namespace concord {
namespace {

using testing::colours;
using testing::kObserverB;
using testing::kObserverC;
using testing::kBulletsMatching;
using testing::kBulletsNonmatching;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no concord::Error thrown";
  return ErrorCode::Io;
}

AgreementTable nonmatching() { return from_counts(kBulletsNonmatching, full_afte_scheme()); }
AgreementTable matching() { return from_counts(kBulletsMatching, full_afte_scheme()); }

TEST(FromCountsTest, Totals) {
  EXPECT_EQ(matching().total(), 960);
  EXPECT_EQ(nonmatching().total(), 1855);
  EXPECT_EQ(from_counts({{1, 0}, {0, 1}}, CategoryScheme({"A", "B"})).total(), 2);
}

TEST(FromCountsTest, ValidationErrorsAreDistinct) {
  const CategoryScheme ab({"A", "B"});
  EXPECT_EQ(code_of([&] { from_counts({{0, 0}, {0, 0}}, ab); }), ErrorCode::ZeroTotal);
  EXPECT_EQ(code_of([&] { from_counts({{1, 0}, {0}}, ab); }), ErrorCode::NonSquare);
  EXPECT_EQ(code_of([&] { from_counts({{1, -1}, {0, 1}}, ab); }), ErrorCode::NegativeCount);
  EXPECT_EQ(code_of([&] { from_counts({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, ab); }),
            ErrorCode::DimensionMismatch);
}

TEST(ObservedAgreementTest, Bullets) {
  EXPECT_EQ(matching().diagonal_sum(), 758);
  EXPECT_EQ(nonmatching().diagonal_sum(), 1201);
  EXPECT_DOUBLE_EQ(observed_agreement(matching()), 758.0 / 960.0);
  EXPECT_NEAR(observed_agreement(matching()), 0.7896, 5e-5);
  EXPECT_NEAR(observed_agreement(nonmatching()), 0.6474, 5e-5);
  EXPECT_DOUBLE_EQ(observed_agreement(from_counts({{3, 0}, {0, 4}}, CategoryScheme({"A", "B"}))),
                   1.0);
}

TEST(MarginalsTest, BulletsNonmatchingExact) {
  // Row and column totals over 1855.
  const std::vector<double> rows{19, 158, 527, 480, 640, 31};
  const std::vector<double> cols{9, 138, 541, 498, 649, 20};
  const auto r = marginals(nonmatching(), Axis::Rows);
  const auto c = marginals(nonmatching(), Axis::Cols);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_DOUBLE_EQ(r[i], rows[i] / 1855.0);
    EXPECT_DOUBLE_EQ(c[i], cols[i] / 1855.0);
  }
  // Reference row entries 1.02, 28.41, 25.88, 1.67 agree at two decimals.
  EXPECT_NEAR(r[0] * 100, 1.02, 0.005);
  EXPECT_NEAR(r[2] * 100, 28.41, 0.005);
  EXPECT_NEAR(c[4] * 100, 34.9865, 5e-5);
}

TEST(MarginalsTest, SymmetricTableHasEqualMarginals) {
  const auto t = from_counts({{4, 1, 2}, {1, 5, 0}, {2, 0, 3}}, colours());
  EXPECT_EQ(marginals(t, Axis::Rows), marginals(t, Axis::Cols));
}

TEST(ProportionTableTest, BulletsNonmatchingCells) {
  const auto p = proportion_table(nonmatching());
  EXPECT_NEAR(p.at(2, 2), 0.1838, 5e-5);
  EXPECT_NEAR(p.at(4, 4), 0.2771, 5e-5);
  const auto id = proportion_table(from_counts({{1, 0}, {0, 1}}, CategoryScheme({"A", "B"})));
  EXPECT_EQ(id.cells(), (std::vector<double>{0.5, 0.0, 0.0, 0.5}));
}

TEST(ProportionTableTest, RejectsNonUnitSum) {
  EXPECT_THROW(ProportionTable(CategoryScheme({"A", "B"}), {0.5, 0.0, 0.0, 0.4}), Error);
  EXPECT_THROW(ProportionTable(CategoryScheme({"A", "B"}), {1.0, 0.0}), Error);
}

TEST(ExpectedTableTest, BulletsNonmatching) {
  const auto e = expected_table(nonmatching());
  EXPECT_NEAR(e.at(3, 4), 0.0905, 5e-5);
  EXPECT_NEAR(e.at(3, 4), 0.09053116440595461, 1e-15);
  EXPECT_NEAR(e.at(4, 4), 0.1207, 5e-5);
  double sum = 0.0;
  for (double c : e.cells()) sum += c;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(ExpectedAgreementTest, Values) {
  EXPECT_NEAR(expected_agreement(nonmatching()), 0.2796, 5e-5);
  EXPECT_NEAR(expected_agreement(nonmatching()), 0.2795975036508017, 1e-15);
  EXPECT_DOUBLE_EQ(
      expected_agreement(from_counts({{25, 25}, {25, 25}}, CategoryScheme({"A", "B"}))), 0.5);
  EXPECT_NEAR(expected_agreement(from_counts(kObserverB, colours())), 0.42, 1e-15);
}

TEST(ExpectedAgreementTest, MatchesEnumerationOracle) {
  EXPECT_NEAR(expected_agreement(from_counts(kObserverC, colours())),
              testing::enumerated_expected_agreement(kObserverC), 1e-12);
}

TEST(CohenKappaTest, ObserverExamples) {
  const auto c = cohen_kappa(from_counts(kObserverC, colours()));
  EXPECT_NEAR(c.p_observed, 0.88, 1e-15);
  EXPECT_NEAR(c.p_expected, 0.42, 1e-15);
  ASSERT_TRUE(c.kappa);
  EXPECT_NEAR(*c.kappa, 0.7931, 5e-5);

  const auto b = cohen_kappa(from_counts(kObserverB, colours()));
  ASSERT_TRUE(b.kappa);
  EXPECT_NEAR(*b.kappa, 0.0, 1e-15);
}

TEST(CohenKappaTest, BulletsNonmatching) {
  const auto s = cohen_kappa(nonmatching());
  ASSERT_TRUE(s.kappa);
  // (0.6474 - 0.2796) / (1 - 0.2796) by hand.
  EXPECT_NEAR(*s.kappa, 0.5106, 5e-5);
}

TEST(SummarizeTest, Bundles) {
  const auto s = summarize(matching());
  EXPECT_EQ(s.n, 960);
  EXPECT_NEAR(s.p_observed, 0.7896, 5e-5);
  ASSERT_TRUE(s.kappa);
  EXPECT_DOUBLE_EQ(*s.kappa, *kappa_from(s.p_observed, s.p_expected));
  EXPECT_EQ(s.row_marginals.size(), 6u);

  const auto id = summarize(from_counts({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, colours()));
  EXPECT_DOUBLE_EQ(id.p_observed, 1.0);
  ASSERT_TRUE(id.kappa);
  EXPECT_DOUBLE_EQ(*id.kappa, 1.0);
}

TEST(SummarizeTest, SingleCellMassIsDegenerate) {
  const auto s = summarize(from_counts({{5, 0}, {0, 0}}, CategoryScheme({"A", "B"})));
  EXPECT_TRUE(s.degenerate());
  EXPECT_DOUBLE_EQ(s.p_expected, 1.0);
  EXPECT_DOUBLE_EQ(s.p_observed, 1.0);
}

TEST(CohenKappaTest, NegativeKappaIsAllowed) {
  const auto s = cohen_kappa(from_counts({{0, 5}, {5, 0}}, CategoryScheme({"A", "B"})));
  ASSERT_TRUE(s.kappa);
  EXPECT_DOUBLE_EQ(*s.kappa, -1.0);
  EXPECT_GE(*s.kappa, -s.p_expected / (1 - s.p_expected) - 1e-12);
}

TEST(TransposeTest, SwapsRoles) {
  const auto t = nonmatching();
  const auto tt = t.transposed();
  EXPECT_EQ(tt.at(0, 1), t.at(1, 0));
  EXPECT_EQ(tt.transposed(), t);
}

}  // namespace
}  // namespace concord
