#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "concord/agreement.hpp"
#include "concord/categories.hpp"

namespace concord {

enum class Material { Bullet, Cartridge };
enum class GroundTruth { Matching, Nonmatching };

std::string_view to_string(Material m);
std::string_view to_string(GroundTruth g);

/// Exact header of the long-format records CSV.
inline constexpr std::string_view kRecordsHeader =
    "examiner_id,set_id,round,material,ground_truth,conclusion";

inline constexpr int kMinRound = 1;
inline constexpr int kMaxRound = 6;

/// One examiner's conclusion on one set in one mailing.
struct EvaluationRecord {
  std::string examiner_id;
  std::string set_id;
  int round = kMinRound;
  Material material = Material::Bullet;
  GroundTruth ground_truth = GroundTruth::Matching;
  std::size_t conclusion = 0;  // index into the active scheme
  std::size_t line = 0;        // source line, 0 when synthesized
};

/// Validates the header, every field, (examiner, set, round) uniqueness and
/// a single ground truth per (material, set). Each failure is an Error
/// carrying the offending line.
std::vector<EvaluationRecord> parse_records(std::istream& in, const CategoryScheme& scheme);

std::vector<EvaluationRecord> load_records(const std::string& path, const CategoryScheme& scheme);

void write_records_csv(std::ostream& out, const std::vector<EvaluationRecord>& records,
                       const CategoryScheme& scheme);

/// Two conclusions on the same set. For repeatability the subject is the
/// examiner; for reproducibility it is "<first>+<second>" with the
/// lexicographically smaller examiner first, and that examiner's conclusion
/// is the row.
struct PairedEvaluation {
  std::size_t first = 0;
  std::size_t second = 0;
  GroundTruth stratum = GroundTruth::Matching;
  Material material = Material::Bullet;
  std::string subject;
  std::string set_id;
};

/// One pair per (examiner, set) seen in exactly two rounds, earlier round
/// first. Three or more evaluations of one set by one examiner is a
/// DataShape error.
std::vector<PairedEvaluation> repeatability_pairs(const std::vector<EvaluationRecord>& records);

/// One pair per set and unordered pair of distinct examiners; an examiner
/// who saw the set more than once contributes the earliest-round conclusion.
std::vector<PairedEvaluation> reproducibility_pairs(const std::vector<EvaluationRecord>& records);

enum class GroupBy { PooledOverSubjects, PerSubject };

/// Subject used for tables pooled over all subjects.
inline constexpr std::string_view kAllSubjects = "ALL";

struct TableKey {
  std::string subject;
  Material material = Material::Bullet;
  GroundTruth stratum = GroundTruth::Matching;

  friend auto operator<=>(const TableKey&, const TableKey&) = default;
};

/// Accumulates first -> row, second -> column. Pairs touching an
/// `excluded` label are dropped; the scheme itself is kept. Keys with no
/// surviving pairs are absent from the result.
std::map<TableKey, AgreementTable> build_tables(const std::vector<PairedEvaluation>& pairs,
                                                const CategoryScheme& scheme, GroupBy group_by,
                                                const std::set<std::string>& excluded = {});

}  // namespace concord
