#include "concord/categories.hpp"

#include <istream>
#include <unordered_set>

#include "concord/agreement.hpp"
#include "concord/error.hpp"

namespace concord {

CategoryScheme::CategoryScheme(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a category scheme needs at least 2 labels");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (label.empty()) {
      throw Error(ErrorCode::InvalidArgument, "empty category label");
    }
    if (!seen.insert(label).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate category label '" + label + "'");
    }
  }
}

std::optional<std::size_t> CategoryScheme::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) {
      return i;
    }
  }
  return std::nullopt;
}

CategoryScheme full_afte_scheme() {
  return CategoryScheme({std::string(afte::kIdentification), std::string(afte::kInconclusiveA),
                         std::string(afte::kInconclusiveB), std::string(afte::kInconclusiveC),
                         std::string(afte::kElimination), std::string(afte::kUnsuitable)});
}

namespace {

CategoryScheme induced_target(const std::vector<std::string>& targets) {
  std::vector<std::string> order;
  std::unordered_set<std::string> seen;
  for (const auto& t : targets) {
    if (seen.insert(t).second) {
      order.push_back(t);
    }
  }
  return CategoryScheme(std::move(order));
}

}  // namespace

PoolingScheme::PoolingScheme(CategoryScheme source, const std::vector<std::string>& targets)
    : source_(std::move(source)),
      target_(targets.size() == source_.size()
                  ? induced_target(targets)
                  : throw Error(ErrorCode::DimensionMismatch,
                                "pooling needs one target per source label")) {
  map_.reserve(targets.size());
  for (const auto& t : targets) {
    map_.push_back(*target_.index_of(t));
  }
}

const std::string& PoolingScheme::map(std::string_view source_label) const {
  auto i = source_.index_of(source_label);
  if (!i) {
    throw Error(ErrorCode::UnknownLabel, "'" + std::string(source_label) + "' is not a source label");
  }
  return target_.label(map_[*i]);
}

std::string_view to_string(BuiltinPooling name) {
  switch (name) {
    case BuiltinPooling::PoolInconclusives: return "pool_inconclusives";
    case BuiltinPooling::PoolToLean: return "pool_to_lean";
  }
  return "unknown";
}

PoolingScheme builtin_pooling(BuiltinPooling name) {
  const std::string id(afte::kIdentification);
  const std::string elim(afte::kElimination);
  const std::string unsuitable(afte::kUnsuitable);
  switch (name) {
    case BuiltinPooling::PoolInconclusives:
      return PoolingScheme(full_afte_scheme(), {id, "Inconclusive", "Inconclusive", "Inconclusive",
                                                elim, unsuitable});
    case BuiltinPooling::PoolToLean:
      return PoolingScheme(full_afte_scheme(),
                           {"ID∪Inc-A", "ID∪Inc-A", std::string(afte::kInconclusiveB),
                            "Elim∪Inc-C", "Elim∪Inc-C", unsuitable});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown builtin pooling");
}

PoolingScheme builtin_pooling(std::string_view name) {
  for (auto candidate : {BuiltinPooling::PoolInconclusives, BuiltinPooling::PoolToLean}) {
    if (name == to_string(candidate)) {
      return builtin_pooling(candidate);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown pooling '" + std::string(name) + "'");
}

PoolingScheme identity_pooling(const CategoryScheme& scheme) {
  return PoolingScheme(scheme, scheme.labels());
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

PoolingScheme parse_pooling(std::istream& in, const CategoryScheme& source) {
  std::vector<std::optional<std::string>> targets(source.size());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') {
      continue;
    }
    const auto arrow = body.find("->");
    if (arrow == std::string::npos) {
      throw Error(ErrorCode::MalformedRow, "expected 'source -> target'", line_no);
    }
    const auto from = trim(std::string_view(body).substr(0, arrow));
    const auto to = trim(std::string_view(body).substr(arrow + 2));
    if (from.empty() || to.empty()) {
      throw Error(ErrorCode::MalformedRow, "empty label in pooling rule", line_no);
    }
    const auto i = source.index_of(from);
    if (!i) {
      throw Error(ErrorCode::UnknownLabel, "'" + from + "' is not in the source scheme", line_no);
    }
    if (targets[*i]) {
      throw Error(ErrorCode::DuplicateKey, "'" + from + "' is mapped twice", line_no);
    }
    targets[*i] = to;
  }
  std::vector<std::string> resolved;
  resolved.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!targets[i]) {
      throw Error(ErrorCode::InvalidArgument, "no pooling rule for '" + source.label(i) + "'");
    }
    resolved.push_back(*targets[i]);
  }
  return PoolingScheme(source, resolved);
}

AgreementTable apply_pooling(const AgreementTable& table, const PoolingScheme& pooling) {
  if (!(table.scheme() == pooling.source())) {
    throw Error(ErrorCode::SchemeMismatch, "table scheme differs from the pooling source scheme");
  }
  const std::size_t k = pooling.target().size();
  std::vector<std::vector<std::int64_t>> pooled(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      pooled[pooling.map_index(i)][pooling.map_index(j)] += table.at(i, j);
    }
  }
  return from_counts(pooled, pooling.target());
}

}  // namespace concord
