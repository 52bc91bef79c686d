#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace concord::cli {

inline constexpr std::uint64_t kDefaultSeed = 1960;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation and I/O errors
inline constexpr int kExitUsage = 2;

/// Everything a single invocation needs, filled from the command line.
struct RunConfig {
  std::string subcommand;
  std::string table_path;
  std::string records_path;
  std::string input_path;
  std::string output_stem;
  std::string output_path;
  std::string pooling_name;
  std::string pooling_file;
  std::string format = "text";
  int percent_decimals = 1;
  int kappa_decimals = 4;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t n = 100;
  double pi = 0.0;
  std::string p_vector;
  std::string labels;
  std::vector<std::string> excluded;
  std::vector<double> isolines{0.0, 0.8};
  std::string title;
  std::string subject = "ALL";
  std::string stratum = "-";
  std::string material = "-";
  std::optional<std::string> scheme_name;
};

/// Runs one invocation. `args` excludes the program name. Returns the
/// process exit status; diagnostics go to `err`, one line per failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace concord::cli
