#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace concord {

class AgreementTable;

/// Ordered set of conclusion labels. The order fixes the row and column
/// order of every table built over the scheme.
class CategoryScheme {
 public:
  /// Throws Error(InvalidArgument) on fewer than two labels, an empty label
  /// or a duplicate.
  explicit CategoryScheme(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::optional<std::size_t> index_of(std::string_view label) const;

  friend bool operator==(const CategoryScheme&, const CategoryScheme&) = default;

 private:
  std::vector<std::string> labels_;
};

namespace afte {
inline constexpr std::string_view kIdentification = "Identification";
inline constexpr std::string_view kInconclusiveA = "Inconclusive-A";
inline constexpr std::string_view kInconclusiveB = "Inconclusive-B";
inline constexpr std::string_view kInconclusiveC = "Inconclusive-C";
inline constexpr std::string_view kElimination = "Elimination";
inline constexpr std::string_view kUnsuitable = "Unsuitable";
}  // namespace afte

/// The six AFTE conclusions in canonical order.
CategoryScheme full_afte_scheme();

/// Many-to-one relabelling of a source scheme. The target scheme's order is
/// the order in which target labels first appear while walking the source.
class PoolingScheme {
 public:
  /// `targets[i]` is the target label of source label i.
  PoolingScheme(CategoryScheme source, const std::vector<std::string>& targets);

  const CategoryScheme& source() const noexcept { return source_; }
  const CategoryScheme& target() const noexcept { return target_; }

  std::size_t map_index(std::size_t source_index) const { return map_.at(source_index); }
  /// Throws Error(UnknownLabel) when `source_label` is not in the source scheme.
  const std::string& map(std::string_view source_label) const;

 private:
  CategoryScheme source_;
  CategoryScheme target_;
  std::vector<std::size_t> map_;
};

enum class BuiltinPooling { PoolInconclusives, PoolToLean };

std::string_view to_string(BuiltinPooling name);

/// Both builtins act on the full AFTE scheme and keep Unsuitable separate.
PoolingScheme builtin_pooling(BuiltinPooling name);
/// Accepts "pool_inconclusives" or "pool_to_lean"; anything else is an
/// invalid-argument error.
PoolingScheme builtin_pooling(std::string_view name);

PoolingScheme identity_pooling(const CategoryScheme& scheme);

/// Reads `source_label -> target_label` lines. Blank lines and lines
/// starting with '#' are ignored. Labels match case-sensitively after
/// trimming surrounding whitespace. Every source label must be mapped once.
PoolingScheme parse_pooling(std::istream& in, const CategoryScheme& source);

/// Cell (g, h) of the result sums the source cells (i, j) with map(i) = g
/// and map(j) = h.
AgreementTable apply_pooling(const AgreementTable& table, const PoolingScheme& pooling);

}  // namespace concord
