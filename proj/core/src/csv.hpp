#pragma once

#include <istream>
#include <string>
#include <vector>

namespace mstnet::detail {

// RFC-4180-style record reader: quoted fields, doubled-quote escapes, CRLF
// tolerant. Returns false once the input is exhausted.
bool read_csv_record(std::istream& is, std::vector<std::string>& fields);

// Quote a field when it contains a comma, quote, or line break.
std::string csv_escape(const std::string& field);

}  // namespace mstnet::detail
