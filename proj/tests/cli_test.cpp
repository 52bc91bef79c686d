#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "concord/categories.hpp"
#include "concord/ingest.hpp"
#include "concord/report.hpp"
#include "test_support.hpp"

namespace concord {
namespace {

using testing::fixture_path;
using testing::read_file;
using testing::scratch_path;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { std::filesystem::create_directories(CONCORD_SCRATCH_DIR); }
};

std::string write_scratch(const std::string& name, const std::string& content) {
  const auto path = scratch_path(name);
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::string line_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return line;
  }
  return {};
}

TEST_F(CliTest, StatsOnNonmatchingFixture) {
  const auto r = invoke({"stats", "--table", fixture_path("bullets_nonmatching.csv")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("64.7%"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("0.5106"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Weak"), std::string::npos);
  EXPECT_NE(r.out.find("row marginals: "), std::string::npos);

  const auto two = invoke({"stats", "--table", fixture_path("bullets_nonmatching.csv"),
                           "--decimals", "2"});
  ASSERT_EQ(two.code, cli::kExitOk);
  EXPECT_NE(two.out.find("27.96%"), std::string::npos) << two.out;
}

TEST_F(CliTest, StatsCsvRow) {
  const auto r = invoke({"stats", "--table", fixture_path("bullets_matching.csv"), "--format",
                         "csv", "--stratum", "matching", "--material", "bullet"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out, std::string(kSummaryCsvHeader) +
                       "\nALL,matching,bullet,full,960,0.789583,0.596419,0.478626,Weak\n");
}

TEST_F(CliTest, PoolThenStats) {
  const auto pooled = scratch_path("nm_pooled.csv");
  const auto p = invoke({"pool", "--table", fixture_path("bullets_nonmatching.csv"), "--pooling",
                         "pool_inconclusives", "--out", pooled});
  ASSERT_EQ(p.code, cli::kExitOk) << p.err;
  EXPECT_TRUE(p.out.empty());
  const auto s = invoke({"stats", "--table", pooled});
  ASSERT_EQ(s.code, cli::kExitOk) << s.err;
  EXPECT_NE(s.out.find("83.6%"), std::string::npos) << s.out;
  EXPECT_NE(s.out.find("pool_inconclusives"), std::string::npos);
}

TEST_F(CliTest, PoolRequiresExactlyOnePooling) {
  const auto table = fixture_path("bullets_matching.csv");
  EXPECT_EQ(invoke({"pool", "--table", table}).code, cli::kExitUsage);
  const auto file = write_scratch("pool.txt", "");
  EXPECT_EQ(invoke({"pool", "--table", table, "--pooling", "pool_to_lean", "--pooling-file", file})
                .code,
            cli::kExitUsage);
  const auto bad = invoke({"pool", "--table", table, "--pooling", "nope"});
  EXPECT_EQ(bad.code, cli::kExitFailure);
}

TEST_F(CliTest, MissingFileNamesPath) {
  const auto missing = scratch_path("does_not_exist.csv");
  const auto r = invoke({"stats", "--table", missing});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find(missing), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"stats"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"stats", "--table", "x", "--format", "xml"}).code, cli::kExitUsage);
  const auto r = invoke({"simulate", "--pi", "0.5", "--p", "0.5,0.5", "--n", "0"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("usage error"), std::string::npos);
  EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, MalformedTableReportsLine) {
  const auto path = write_scratch("bad.csv", ",a,b\na,1,2\nb,3,x\n");
  const auto r = invoke({"stats", "--table", path});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(CliTest, Model) {
  const auto r = invoke({"model", "--pi", "0.8", "--p", "0.1,0.5,0.4", "--labels", "b,r,g"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(line_starting(r.out, ","), ",b,r,g");
  EXPECT_NE(r.out.find("# pi=0.8"), std::string::npos);
  const auto kappa_line = line_starting(r.out, "# kappa=");
  ASSERT_FALSE(kappa_line.empty());
  EXPECT_NEAR(std::stod(kappa_line.substr(8)), 0.8, 1e-12);

  const auto degenerate = invoke({"model", "--pi", "0.3", "--p", "1,0"});
  ASSERT_EQ(degenerate.code, cli::kExitOk) << degenerate.err;
  EXPECT_NE(degenerate.out.find("# kappa=NA"), std::string::npos);

  EXPECT_EQ(invoke({"model", "--pi", "1.5", "--p", "0.5,0.5"}).code, cli::kExitFailure);
  EXPECT_EQ(invoke({"model", "--pi", "0.5", "--p", "0.5,0.4"}).code, cli::kExitFailure);
  EXPECT_EQ(invoke({"model", "--pi", "0.5", "--p", "0.5,abc"}).code, cli::kExitFailure);
}

TEST_F(CliTest, SimulateIsSeededAndReproducible) {
  const std::vector<std::string> args{"simulate", "--pi", "0.6", "--p", "0.2,0.3,0.5", "--n",
                                      "5000"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("# seed=1960 generator=mt19937_64+splitmix64 n=5000"), std::string::npos)
      << a.out;
  auto other = args;
  other.insert(other.end(), {"--seed", "7"});
  const auto c = invoke(other);
  EXPECT_NE(c.out, a.out);
  EXPECT_NE(c.out.find("# seed=7 "), std::string::npos);
}

TEST_F(CliTest, SignTest) {
  std::string csv = "observed,expected\n";
  for (int i = 0; i < 20; ++i) csv += "0.9,0.5\n";
  const auto r = invoke({"signtest", "--input", write_scratch("signs.csv", csv)});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("n_positive=20 n_negative=0 n_zero=0 n_effective=20 "
                       "p_value=9.5367431640625e-07"),
            std::string::npos)
      << r.out;

  const auto zeros = invoke({"signtest", "--input", write_scratch("zeros.csv", "0.5,0.5\n")});
  EXPECT_EQ(zeros.code, cli::kExitFailure);
  const auto bad = invoke({"signtest", "--input", write_scratch("bad_signs.csv", "0.5\n")});
  EXPECT_EQ(bad.code, cli::kExitFailure);
  EXPECT_NE(bad.err.find("line 1"), std::string::npos);
}

TEST_F(CliTest, PlotWritesSvg) {
  const auto input = write_scratch(
      "points.csv", "subject,p_expected,p_observed\nA,0.3,0.7\nB,0.5,0.9\nC,0.2,0.4\n");
  const auto stem = scratch_path("scatter");
  std::filesystem::remove(stem + ".svg");
  const auto r = invoke({"plot", "--input", input, "--out", stem, "--title", "A & B"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto svg = read_file(stem + ".svg");
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg "), std::string::npos);
  EXPECT_NE(svg.find("A &amp; B"), std::string::npos);
  EXPECT_NE(svg.find("data-kappa=\"0.8000\""), std::string::npos);

  const auto out_of_range =
      write_scratch("bad_points.csv", "subject,p_expected,p_observed\nA,1.3,0.7\n");
  EXPECT_EQ(invoke({"plot", "--input", out_of_range, "--out", stem}).code, cli::kExitFailure);
}

std::string synthetic_records() {
  auto records = testing::synthesize_repeatability(testing::kBulletsMatching, Material::Bullet,
                                                   GroundTruth::Matching, 7, "M");
  const auto nm = testing::synthesize_repeatability(
      testing::kBulletsNonmatching, Material::Bullet, GroundTruth::Nonmatching, 7, "N");
  records.insert(records.end(), nm.begin(), nm.end());
  std::ostringstream out;
  write_records_csv(out, records, full_afte_scheme());
  return out.str();
}

TEST_F(CliTest, AnalyzeAgreesWithStats) {
  const auto records = write_scratch("records.csv", synthetic_records());
  const auto stem = scratch_path("run");
  const auto r = invoke({"analyze", "--records", records, "--out", stem});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("reproducibility: no pairs"), std::string::npos) << r.out;

  const auto summary = read_file(stem + "-repeatability.summary.csv");
  for (const auto& [stratum, fixture] :
       {std::pair{"matching", "bullets_matching.csv"}, {"nonmatching", "bullets_nonmatching.csv"}}) {
    const auto stats = invoke({"stats", "--table", fixture_path(fixture), "--format", "csv",
                               "--stratum", stratum, "--material", "bullet"});
    ASSERT_EQ(stats.code, cli::kExitOk);
    const auto expected = line_starting(stats.out, "ALL,");
    ASSERT_FALSE(expected.empty());
    EXPECT_EQ(line_starting(summary, std::string("ALL,") + stratum + ",bullet,full,"), expected);
  }
  EXPECT_TRUE(std::filesystem::exists(stem + "-repeatability-bullet-matching-full.svg"));
  EXPECT_TRUE(
      std::filesystem::exists(stem + "-repeatability-bullet-nonmatching-pool_to_lean.svg"));
  const auto text = read_file(stem + "-repeatability.summary.txt");
  EXPECT_NE(text.find("SIGNTEST label=repeatability bullet matching full"), std::string::npos);
}

TEST_F(CliTest, AnalyzeIsByteIdenticalAcrossRuns) {
  const auto records = write_scratch("records_twice.csv", synthetic_records());
  const auto a = invoke({"analyze", "--records", records, "--out", scratch_path("first")});
  const auto b = invoke({"analyze", "--records", records, "--out", scratch_path("second")});
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  ASSERT_EQ(b.code, cli::kExitOk) << b.err;
  for (const auto* suffix : {"-repeatability.summary.csv", "-repeatability.summary.txt",
                             "-repeatability-bullet-matching-full.svg"}) {
    EXPECT_EQ(read_file(scratch_path(std::string("first") + suffix)),
              read_file(scratch_path(std::string("second") + suffix)))
        << suffix;
  }
}

TEST_F(CliTest, AnalyzeExclusionAndBadRecords) {
  const auto records = write_scratch("records_excl.csv", synthetic_records());
  const auto stem = scratch_path("excl");
  const auto r =
      invoke({"analyze", "--records", records, "--out", stem, "--exclude", "Unsuitable"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto row = line_starting(read_file(stem + "-repeatability.summary.csv"),
                                 "ALL,matching,bullet,full,");
  EXPECT_EQ(row.rfind("ALL,matching,bullet,full,947,", 0), 0u) << row;

  EXPECT_EQ(invoke({"analyze", "--records", records, "--out", stem, "--exclude", "Maybe"}).code,
            cli::kExitFailure);
  const auto bad = write_scratch(
      "records_bad.csv", std::string(kRecordsHeader) + "\nE1,S1,1,bullet,matching,Perhaps\n");
  const auto e = invoke({"analyze", "--records", bad, "--out", stem});
  EXPECT_EQ(e.code, cli::kExitFailure);
  EXPECT_NE(e.err.find("line 2"), std::string::npos) << e.err;
}

}  // namespace
}  // namespace concord
