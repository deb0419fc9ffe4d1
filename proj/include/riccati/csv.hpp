#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace riccati::csv {

/// Shortest text that round-trips through strtod (17 significant digits).
std::string format(double value);

std::vector<std::string> split(std::string_view line, char sep = ',');
std::string trim(std::string_view s);

/// Parses a decimal; throws InvalidConfig with `context` on failure.
double parse_double(std::string_view text, std::string_view context);

/// Opens for writing or throws Io.
std::ofstream open_out(const std::string& path);
std::ifstream open_in(const std::string& path);

}  // namespace riccati::csv
