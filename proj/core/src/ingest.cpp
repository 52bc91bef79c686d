#include "concord/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <tuple>
#include <utility>

#include <fmt/format.h>

#include "concord/error.hpp"

namespace concord {

std::string_view to_string(Material m) {
  return m == Material::Bullet ? "bullet" : "cartridge";
}

std::string_view to_string(GroundTruth g) {
  return g == GroundTruth::Matching ? "matching" : "nonmatching";
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) {
      return fields;
    }
    start = comma + 1;
  }
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') {
    s.remove_suffix(1);
  }
  return s;
}

Material parse_material(std::string_view s, std::size_t line) {
  if (s == "bullet") return Material::Bullet;
  if (s == "cartridge") return Material::Cartridge;
  throw Error(ErrorCode::MalformedRow, "material must be 'bullet' or 'cartridge', got '" +
                                           std::string(s) + "'",
              line);
}

GroundTruth parse_ground_truth(std::string_view s, std::size_t line) {
  if (s == "matching") return GroundTruth::Matching;
  if (s == "nonmatching") return GroundTruth::Nonmatching;
  throw Error(ErrorCode::MalformedRow, "ground_truth must be 'matching' or 'nonmatching', got '" +
                                           std::string(s) + "'",
              line);
}

int parse_round(std::string_view s, std::size_t line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::MalformedRow, "round '" + std::string(s) + "' is not an integer", line);
  }
  if (value < kMinRound || value > kMaxRound) {
    throw Error(ErrorCode::MalformedRow,
                fmt::format("round {} outside {}..{}", value, kMinRound, kMaxRound), line);
  }
  return value;
}

using SetKey = std::pair<Material, std::string>;

}  // namespace

std::vector<EvaluationRecord> parse_records(std::istream& in, const CategoryScheme& scheme) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::EmptyInput, "records CSV is empty");
  }
  ++line_no;
  if (strip_cr(line) != kRecordsHeader) {
    throw Error(ErrorCode::BadHeader, "expected header '" + std::string(kRecordsHeader) + "'",
                line_no);
  }

  std::vector<EvaluationRecord> records;
  std::map<std::tuple<std::string, Material, std::string, int>, std::size_t> seen;
  std::map<SetKey, std::pair<GroundTruth, std::size_t>> truth_of_set;

  while (std::getline(in, line)) {
    ++line_no;
    const auto body = strip_cr(line);
    if (body.empty()) {
      continue;
    }
    const auto f = split(body);
    if (f.size() != 6) {
      throw Error(ErrorCode::MalformedRow, fmt::format("expected 6 fields, found {}", f.size()),
                  line_no);
    }
    if (f[0].empty() || f[1].empty()) {
      throw Error(ErrorCode::MalformedRow, "examiner_id and set_id must be nonempty", line_no);
    }
    EvaluationRecord r;
    r.examiner_id = f[0];
    r.set_id = f[1];
    r.round = parse_round(f[2], line_no);
    r.material = parse_material(f[3], line_no);
    r.ground_truth = parse_ground_truth(f[4], line_no);
    const auto conclusion = scheme.index_of(f[5]);
    if (!conclusion) {
      throw Error(ErrorCode::UnknownLabel, "unknown conclusion '" + std::string(f[5]) + "'",
                  line_no);
    }
    r.conclusion = *conclusion;
    r.line = line_no;

    const auto key = std::make_tuple(r.examiner_id, r.material, r.set_id, r.round);
    if (auto [it, inserted] = seen.emplace(key, line_no); !inserted) {
      throw Error(ErrorCode::DuplicateKey,
                  fmt::format("examiner '{}' set '{}' round {} already given on line {}",
                              r.examiner_id, r.set_id, r.round, it->second),
                  line_no);
    }
    const SetKey set_key{r.material, r.set_id};
    if (auto [it, inserted] = truth_of_set.emplace(set_key, std::make_pair(r.ground_truth, line_no));
        !inserted && it->second.first != r.ground_truth) {
      throw Error(ErrorCode::InconsistentGroundTruth,
                  fmt::format("set '{}' was {} on line {}", r.set_id,
                              to_string(it->second.first), it->second.second),
                  line_no);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<EvaluationRecord> load_records(const std::string& path, const CategoryScheme& scheme) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  }
  return parse_records(in, scheme);
}

void write_records_csv(std::ostream& out, const std::vector<EvaluationRecord>& records,
                       const CategoryScheme& scheme) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) {
    out << r.examiner_id << ',' << r.set_id << ',' << r.round << ',' << to_string(r.material)
        << ',' << to_string(r.ground_truth) << ',' << scheme.label(r.conclusion) << '\n';
  }
}

namespace {

// Records of each examiner on each set, ordered by round.
std::map<std::tuple<std::string, Material, std::string>, std::vector<const EvaluationRecord*>>
by_examiner_and_set(const std::vector<EvaluationRecord>& records) {
  std::map<std::tuple<std::string, Material, std::string>, std::vector<const EvaluationRecord*>>
      groups;
  for (const auto& r : records) {
    groups[{r.examiner_id, r.material, r.set_id}].push_back(&r);
  }
  for (auto& [key, list] : groups) {
    std::sort(list.begin(), list.end(),
              [](const auto* a, const auto* b) { return a->round < b->round; });
  }
  return groups;
}

}  // namespace

std::vector<PairedEvaluation> repeatability_pairs(const std::vector<EvaluationRecord>& records) {
  std::vector<PairedEvaluation> pairs;
  for (const auto& [key, list] : by_examiner_and_set(records)) {
    if (list.size() > 2) {
      const auto& [examiner, material, set] = key;
      throw Error(ErrorCode::DataShape,
                  fmt::format("examiner '{}' evaluated set '{}' {} times; at most 2 allowed",
                              examiner, set, list.size()),
                  list[2]->line);
    }
    if (list.size() < 2) {
      continue;
    }
    pairs.push_back({list[0]->conclusion, list[1]->conclusion, list[0]->ground_truth,
                     list[0]->material, list[0]->examiner_id, list[0]->set_id});
  }
  return pairs;
}

std::vector<PairedEvaluation> reproducibility_pairs(const std::vector<EvaluationRecord>& records) {
  // Earliest evaluation per examiner, grouped by set. std::map keeps
  // examiners in lexicographic order, which fixes the row/column roles.
  std::map<SetKey, std::map<std::string, const EvaluationRecord*>> first_seen;
  for (const auto& [key, list] : by_examiner_and_set(records)) {
    const auto& [examiner, material, set] = key;
    first_seen[{material, set}][examiner] = list.front();
  }
  std::vector<PairedEvaluation> pairs;
  for (const auto& [set_key, examiners] : first_seen) {
    for (auto a = examiners.begin(); a != examiners.end(); ++a) {
      for (auto b = std::next(a); b != examiners.end(); ++b) {
        const auto* ra = a->second;
        const auto* rb = b->second;
        pairs.push_back({ra->conclusion, rb->conclusion, ra->ground_truth, ra->material,
                         a->first + "+" + b->first, ra->set_id});
      }
    }
  }
  return pairs;
}

std::map<TableKey, AgreementTable> build_tables(const std::vector<PairedEvaluation>& pairs,
                                                const CategoryScheme& scheme, GroupBy group_by,
                                                const std::set<std::string>& excluded) {
  std::vector<bool> dropped(scheme.size(), false);
  for (const auto& label : excluded) {
    const auto i = scheme.index_of(label);
    if (!i) {
      throw Error(ErrorCode::UnknownLabel, "excluded label '" + label + "' is not in the scheme");
    }
    dropped[*i] = true;
  }

  const std::size_t k = scheme.size();
  std::map<TableKey, std::vector<std::vector<std::int64_t>>> counts;
  for (const auto& pair : pairs) {
    if (pair.first >= k || pair.second >= k) {
      throw Error(ErrorCode::DimensionMismatch, "pair conclusion outside the scheme");
    }
    if (dropped[pair.first] || dropped[pair.second]) {
      continue;
    }
    TableKey key{group_by == GroupBy::PerSubject ? pair.subject : std::string(kAllSubjects),
                 pair.material, pair.stratum};
    auto [it, inserted] = counts.try_emplace(std::move(key));
    if (inserted) {
      it->second.assign(k, std::vector<std::int64_t>(k, 0));
    }
    ++it->second[pair.first][pair.second];
  }

  std::map<TableKey, AgreementTable> tables;
  for (const auto& [key, matrix] : counts) {
    tables.emplace(key, from_counts(matrix, scheme));
  }
  return tables;
}

}  // namespace concord
