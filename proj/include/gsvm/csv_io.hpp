#pragma once

#include "gsvm/types.hpp"

#include <iosfwd>
#include <string>

namespace gsvm {

// One point per row: n feature values then a label column holding exactly
// `1` or `-1`. A header row is detected by a non-numeric first field; blank
// lines are ignored; LF and CRLF both accepted. Parsing is locale-independent.
DataSet parse_dataset_csv(std::istream& in);
DataSet parse_dataset_csv_file(const std::string& path);

// Round-trip exact serialization (shortest float form that re-parses to the
// same value).
void serialize_dataset_csv(const DataSet& ds, std::ostream& out);
std::string dataset_to_csv(const DataSet& ds);

// Shortest decimal form of a double that parses back to the same value.
std::string format_double(double v);

}  // namespace gsvm
