#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace turnpike::csv {

using Cell = std::variant<double, long, std::string>;

/// %.17g: round-trips every binary64 value.
[[nodiscard]] std::string format_double(double v);

void write_header(std::ostream& os, std::initializer_list<std::string_view> columns);
void write_row(std::ostream& os, const std::vector<Cell>& cells);

}  // namespace turnpike::csv
