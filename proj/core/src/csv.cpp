#include "parksent/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

namespace parksent::csv {

std::optional<std::vector<std::string>> read_row(std::istream& in, char delimiter) {
    int c = in.get();
    if (c == EOF) return std::nullopt;

    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (;;) {
        if (c == EOF) {
            fields.push_back(std::move(field));
            return fields;
        }
        const char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                const int next = in.peek();
                if (next == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty()) {
            quoted = true;
        } else if (ch == delimiter) {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            fields.push_back(std::move(field));
            return fields;
        } else if (ch == '\r') {
            // swallow, handle \r\n and bare \r
            if (in.peek() == '\n') in.get();
            fields.push_back(std::move(field));
            return fields;
        } else {
            field.push_back(ch);
        }
        c = in.get();
    }
}

std::string quote_field(const std::string& field) {
    bool needs_quotes = false;
    for (const char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.put(',');
        out << quote_field(fields[i]);
    }
    out.put('\n');
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    // %.12g keeps hand-checkable values readable while staying stable.
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace parksent::csv
