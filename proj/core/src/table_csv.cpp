#include "concord/table_csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "concord/error.hpp"

namespace concord {

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') {
    line.remove_suffix(1);
  }
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return fields;
}

std::int64_t parse_count(const std::string& field, std::size_t line_no) {
  std::int64_t value = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw Error(ErrorCode::MalformedRow, "'" + field + "' is not an integer count", line_no);
  }
  return value;
}

}  // namespace

AgreementTable read_table_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::EmptyInput, "table CSV is empty");
  }
  ++line_no;
  auto header = split_csv_line(line);
  if (header.size() < 3 || !header.front().empty()) {
    throw Error(ErrorCode::BadHeader, "header must be an empty cell followed by labels", line_no);
  }
  std::vector<std::string> labels(header.begin() + 1, header.end());
  CategoryScheme scheme = [&] {
    try {
      return CategoryScheme(labels);
    } catch (const Error& e) {
      throw Error(ErrorCode::BadHeader, e.what(), line_no);
    }
  }();

  std::vector<std::vector<std::int64_t>> matrix;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      continue;
    }
    auto fields = split_csv_line(line);
    if (fields.size() != labels.size() + 1) {
      throw Error(ErrorCode::MalformedRow,
                  fmt::format("expected {} fields, found {}", labels.size() + 1, fields.size()),
                  line_no);
    }
    if (matrix.size() >= labels.size()) {
      throw Error(ErrorCode::NonSquare, "more rows than header labels", line_no);
    }
    const auto& expected = labels[matrix.size()];
    if (fields.front() != expected) {
      throw Error(ErrorCode::UnknownLabel,
                  "row label '" + fields.front() + "' where '" + expected + "' was expected",
                  line_no);
    }
    std::vector<std::int64_t> row;
    row.reserve(labels.size());
    for (std::size_t j = 1; j < fields.size(); ++j) {
      row.push_back(parse_count(fields[j], line_no));
    }
    matrix.push_back(std::move(row));
  }
  if (matrix.size() != labels.size()) {
    throw Error(ErrorCode::NonSquare, fmt::format("expected {} rows, found {}", labels.size(),
                                                  matrix.size()));
  }
  return from_counts(matrix, scheme);
}

AgreementTable read_table_csv(std::istream& in, const CategoryScheme& scheme) {
  auto table = read_table_csv(in);
  if (!(table.scheme() == scheme)) {
    throw Error(ErrorCode::SchemeMismatch, "table labels do not match the expected scheme", 1);
  }
  return table;
}

void write_table_csv(std::ostream& out, const AgreementTable& table) {
  for (const auto& label : table.scheme().labels()) {
    out << ',' << label;
  }
  out << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.scheme().label(i);
    for (std::size_t j = 0; j < table.size(); ++j) {
      out << ',' << table.at(i, j);
    }
    out << '\n';
  }
}

void write_proportion_csv(std::ostream& out, const ProportionTable& table, int precision) {
  for (const auto& label : table.scheme().labels()) {
    out << ',' << label;
  }
  out << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.scheme().label(i);
    for (std::size_t j = 0; j < table.size(); ++j) {
      out << ',' << fmt::format("{:.{}g}", table.at(i, j), precision);
    }
    out << '\n';
  }
}

AgreementTable load_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  }
  return read_table_csv(in);
}

}  // namespace concord
