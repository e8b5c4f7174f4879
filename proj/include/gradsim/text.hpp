#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gradsim {

// Shortest decimal form that parses back to the same double.
std::string fmt(double v);
double parse_double(std::string_view s);
std::size_t parse_size(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string trim(std::string_view s);

}  // namespace gradsim
