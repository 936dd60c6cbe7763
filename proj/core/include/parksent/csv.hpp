#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace parksent::csv {

/// RFC 4180-style reader: quoted fields, doubled-quote escapes, embedded
/// commas and newlines inside quotes. Returns nullopt at end of stream.
std::optional<std::vector<std::string>> read_row(std::istream& in, char delimiter = ',');

std::string quote_field(const std::string& field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest-ish fixed formatting used by every CSV the toolkit writes, so
/// reruns are byte-identical.
std::string format_double(double v);

}  // namespace parksent::csv
