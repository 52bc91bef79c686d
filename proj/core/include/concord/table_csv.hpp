#pragma once

#include <iosfwd>
#include <string>

#include "concord/agreement.hpp"

namespace concord {

// Table CSV layout: the first row is an empty cell followed by the category
// labels; each later row is a row label followed by K integer counts. Row
// labels must repeat the header labels in the same order.

/// Takes the scheme from the header.
AgreementTable read_table_csv(std::istream& in);
/// Additionally requires the header to equal `scheme`.
AgreementTable read_table_csv(std::istream& in, const CategoryScheme& scheme);

void write_table_csv(std::ostream& out, const AgreementTable& table);

/// Same layout with proportions printed to `precision` significant digits.
void write_proportion_csv(std::ostream& out, const ProportionTable& table, int precision = 10);

AgreementTable load_table_csv(const std::string& path);

}  // namespace concord
