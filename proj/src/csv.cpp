#include "turnpike/csv.hpp"

#include <cmath>
#include <cstdio>

namespace turnpike::csv {
namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_header(std::ostream& os, std::initializer_list<std::string_view> columns) {
    bool first = true;
    for (auto c : columns) {
        if (!first) os << ',';
        os << c;
        first = false;
    }
    os << '\n';
}

void write_row(std::ostream& os, const std::vector<Cell>& cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) os << ',';
        first = false;
        if (const auto* d = std::get_if<double>(&c)) os << format_double(*d);
        else if (const auto* l = std::get_if<long>(&c)) os << *l;
        else os << quote(std::get<std::string>(c));
    }
    os << '\n';
}

}  // namespace turnpike::csv
