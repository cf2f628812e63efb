#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace govinf::csv {

/// RFC 4180 field: quoted when it contains a comma, quote, CR or LF.
[[nodiscard]] std::string field(std::string_view value);

/// One record terminated by LF.
[[nodiscard]] std::string row(const std::vector<std::string>& fields);

/// Shortest decimal that round-trips to the same double.
[[nodiscard]] std::string number(double value);

}  // namespace govinf::csv
